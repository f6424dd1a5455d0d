#include "connections/dataset.hpp"

#include <algorithm>
#include <fstream>

namespace connections {

std::string_view to_string(DifficultyBucket bucket) {
  switch (bucket) {
    case DifficultyBucket::Below2_5: return "below_2_5";
    case DifficultyBucket::From2_5To3: return "2_5_to_3";
    case DifficultyBucket::From3To3_5: return "3_to_3_5";
    case DifficultyBucket::Above3_5: return "above_3_5";
  }
  return "?";
}

DifficultyBucket difficulty_bucket(double rating) {
  if (rating <= 0.0) throw NonPositiveRatingError(rating);
  if (rating < 2.5) return DifficultyBucket::Below2_5;
  if (rating < 3.0) return DifficultyBucket::From2_5To3;
  if (rating < 3.5) return DifficultyBucket::From3To3_5;
  return DifficultyBucket::Above3_5;
}

namespace {

RawPuzzleRecord record_from_json(const nlohmann::json& j) {
  RawPuzzleRecord record;
  record.id = j.at("id").get<int>();
  record.date = j.at("date").get<std::string>();
  record.difficulty = j.at("difficulty").get<double>();
  for (const auto& g : j.at("groups")) {
    RawGroupRecord group;
    group.category = g.at("category").get<std::string>();
    group.color = g.at("color").get<std::string>();
    group.words = g.at("words").get<std::vector<std::string>>();
    record.groups.push_back(std::move(group));
  }
  return record;
}

}  // namespace

std::vector<Puzzle> load_archive(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ArchiveParseError("archive parse error at byte " + std::to_string(e.byte) + ": " +
                                e.what(),
                            e.byte);
  }
  if (!doc.is_array()) throw ArchiveParseError("archive root must be a JSON array", 0);

  std::vector<Puzzle> puzzles;
  puzzles.reserve(doc.size());
  for (const auto& item : doc) {
    int id = item.contains("id") && item["id"].is_number_integer() ? item["id"].get<int>() : -1;
    try {
      puzzles.push_back(validate_puzzle(record_from_json(item)));
    } catch (const PuzzleValidationError& e) {
      throw ArchiveValidationError(id, e.what());
    } catch (const nlohmann::json::exception& e) {
      throw ArchiveValidationError(id, "puzzle " + std::to_string(id) +
                                           ": malformed record: " + e.what());
    } catch (const Error& e) {
      throw ArchiveValidationError(id, "puzzle " + std::to_string(id) + ": " + e.what());
    }
  }

  std::sort(puzzles.begin(), puzzles.end(),
            [](const Puzzle& a, const Puzzle& b) { return a.id() < b.id(); });
  auto dup = std::adjacent_find(puzzles.begin(), puzzles.end(),
                                [](const Puzzle& a, const Puzzle& b) { return a.id() == b.id(); });
  if (dup != puzzles.end()) throw DuplicateIdError(dup->id());
  return puzzles;
}

std::vector<Puzzle> load_archive(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open archive file: " + path.string());
  return load_archive(in);
}

nlohmann::json puzzle_to_json(const Puzzle& puzzle) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : puzzle.groups()) {
    nlohmann::json words = nlohmann::json::array();
    for (const auto& w : g.words) words.push_back(w.text());
    groups.push_back({{"category", g.category},
                      {"color", std::string(to_string(g.color))},
                      {"words", std::move(words)}});
  }
  return {{"id", puzzle.id()},
          {"date", puzzle.date()},
          {"difficulty", puzzle.difficulty()},
          {"groups", std::move(groups)}};
}

DatasetSummary dataset_summary(const std::vector<Puzzle>& puzzles) {
  DatasetSummary summary;
  summary.total = static_cast<int>(puzzles.size());
  for (const auto& p : puzzles) {
    summary.bucket_counts[static_cast<size_t>(difficulty_bucket(p.difficulty()))]++;
  }
  return summary;
}

}  // namespace connections
