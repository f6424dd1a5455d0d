#pragma once

#include <optional>
#include <string>
#include <vector>

#include "connections/provider.hpp"
#include "connections/puzzle.hpp"

namespace connections {

struct OracleOptions {
  /// Proposed once as the very first guess; used to script red-herring runs.
  std::optional<Guess> red_herring;
  /// When set, discern/evaluate answers pick the first candidate on the page
  /// instead of the first correct one — the behavior of a solver that is
  /// taken in by a plausible wrong grouping.
  bool naive_picks = false;
};

/// Scripted provider that plays a competent solver for one puzzle: it reads
/// the prompt to see which pipeline stage is asking and answers in the format
/// that stage expects, always naming correct groups (unless configured to
/// push a red herring first). Per-game use only.
class OracleProvider : public CompletionProvider {
 public:
  explicit OracleProvider(Puzzle puzzle, OracleOptions options = {});

  CompletionResponse complete(const CompletionRequest& request) override;

  /// A guess overlapping all four groups (one word from each), handy for
  /// red-herring scripts on any puzzle.
  static Guess cross_group_herring(const Puzzle& puzzle);

 private:
  std::string answer(const std::string& prompt);

  Puzzle puzzle_;
  OracleOptions options_;
  int proposals_made_ = 0;
};

}  // namespace connections
