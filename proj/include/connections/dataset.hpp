#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "connections/puzzle.hpp"

namespace connections {

/// Difficulty buckets. Half-open intervals: [0, 2.5), [2.5, 3.0), [3.0, 3.5),
/// [3.5, inf).
enum class DifficultyBucket { Below2_5, From2_5To3, From3To3_5, Above3_5 };

std::string_view to_string(DifficultyBucket bucket);
constexpr std::array<DifficultyBucket, 4> kAllBuckets = {
    DifficultyBucket::Below2_5, DifficultyBucket::From2_5To3, DifficultyBucket::From3To3_5,
    DifficultyBucket::Above3_5};

class NonPositiveRatingError : public Error {
 public:
  explicit NonPositiveRatingError(double rating)
      : Error("difficulty rating must be positive, got " + std::to_string(rating)) {}
};

DifficultyBucket difficulty_bucket(double rating);

class ArchiveParseError : public Error {
 public:
  ArchiveParseError(const std::string& what, size_t byte_offset)
      : Error(what), byte_offset_(byte_offset) {}
  size_t byte_offset() const { return byte_offset_; }

 private:
  size_t byte_offset_;
};

class ArchiveValidationError : public Error {
 public:
  ArchiveValidationError(int puzzle_id, const std::string& what)
      : Error(what), puzzle_id_(puzzle_id) {}
  int puzzle_id() const { return puzzle_id_; }

 private:
  int puzzle_id_;
};

class DuplicateIdError : public Error {
 public:
  explicit DuplicateIdError(int puzzle_id)
      : Error("duplicate puzzle id " + std::to_string(puzzle_id)), puzzle_id_(puzzle_id) {}
  int puzzle_id() const { return puzzle_id_; }

 private:
  int puzzle_id_;
};

/// Parses a JSON archive (array of puzzle records), validates every record,
/// and returns the puzzles ordered by id.
std::vector<Puzzle> load_archive(std::istream& in);
std::vector<Puzzle> load_archive(const std::filesystem::path& path);

/// Serialization for the archive schema; load_archive(serialize(p)) round-trips.
nlohmann::json puzzle_to_json(const Puzzle& puzzle);

struct DatasetSummary {
  std::array<int, 4> bucket_counts{};  // indexed like kAllBuckets
  int total = 0;
};

DatasetSummary dataset_summary(const std::vector<Puzzle>& puzzles);

}  // namespace connections
