#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "connections/approaches.hpp"
#include "connections/dataset.hpp"
#include "connections/guess_logic.hpp"
#include "connections/harness.hpp"
#include "connections/oracle.hpp"
#include "connections/prompt_kit.hpp"
#include "connections/transcript.hpp"

namespace py = pybind11;
using namespace connections;

namespace {

std::vector<Word> to_words(const std::vector<std::string>& raw) {
  std::vector<Word> out;
  out.reserve(raw.size());
  for (const auto& r : raw) out.emplace_back(r);
  return out;
}

std::vector<std::string> from_words(const std::vector<Word>& words) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(w.text());
  return out;
}

Guess to_guess(const std::vector<std::string>& raw) { return Guess::make(to_words(raw)); }

std::vector<std::string> from_guess(const Guess& g) {
  return {g.words()[0].text(), g.words()[1].text(), g.words()[2].text(), g.words()[3].text()};
}

py::dict score_dict(const GameScore& s) {
  py::dict d;
  d["solved"] = s.solved;
  d["perfect"] = s.perfect;
  d["correct"] = s.correct_count;
  d["incorrect"] = s.incorrect_count;
  return d;
}

py::dict decision_dict(const SubmissionDecision& d) {
  py::dict out;
  out["submit"] = d.kind == SubmissionDecision::Kind::Submit;
  py::list guesses;
  for (const auto& g : d.guesses) guesses.append(from_guess(g));
  out["guesses"] = guesses;
  return out;
}

ApproachConfig make_config(const std::string& approach, const std::string& model_id,
                           uint64_t seed) {
  auto id = approach_from_string(approach);
  if (!id) throw Error("unknown approach \"" + approach + "\"");
  ApproachConfig cfg;
  cfg.approach = *id;
  cfg.model_id = model_id;
  cfg.rng_seed = seed;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Engine for playing Connections word puzzles through prompt pipelines";

  py::register_exception<Error>(m, "ConnectionsError");

  // ---- puzzles ------------------------------------------------------------
  py::class_<SolutionGroup>(m, "SolutionGroup")
      .def_readonly("category", &SolutionGroup::category)
      .def_property_readonly("color",
                             [](const SolutionGroup& g) { return std::string(to_string(g.color)); })
      .def_property_readonly("words",
                             [](const SolutionGroup& g) {
                               return std::vector<std::string>{g.words[0].text(), g.words[1].text(),
                                                               g.words[2].text(), g.words[3].text()};
                             });

  py::class_<Puzzle>(m, "Puzzle")
      .def_property_readonly("id", &Puzzle::id)
      .def_property_readonly("date", &Puzzle::date)
      .def_property_readonly("difficulty", &Puzzle::difficulty)
      .def_property_readonly("groups",
                             [](const Puzzle& p) {
                               return std::vector<SolutionGroup>(p.groups().begin(),
                                                                 p.groups().end());
                             })
      .def_property_readonly("words", [](const Puzzle& p) { return from_words(p.words()); });

  m.def("canonical_word", &canonical_word, py::arg("raw"));
  m.def("load_archive",
        [](const std::filesystem::path& path) { return load_archive(path); },
        py::arg("path"));
  m.def("difficulty_bucket",
        [](double rating) { return std::string(to_string(difficulty_bucket(rating))); },
        py::arg("rating"));
  m.def("check_guess", [](const Puzzle& puzzle, const std::vector<std::string>& words) {
    auto outcome = check_guess(puzzle, to_guess(words));
    py::dict d;
    d["correct"] = outcome.correct;
    if (outcome.correct) {
      d["category"] = outcome.group->category;
      d["color"] = std::string(to_string(outcome.group->color));
    }
    return d;
  });

  // ---- game state ----------------------------------------------------------
  py::class_<GameState>(m, "GameState")
      .def(py::init<Puzzle>())
      .def_property_readonly("remaining",
                             [](const GameState& s) { return from_words(s.remaining()); })
      .def_property_readonly("status",
                             [](const GameState& s) { return std::string(to_string(s.status())); })
      .def_property_readonly("correct_count",
                             [](const GameState& s) { return s.correct().size(); })
      .def_property_readonly("incorrect_count",
                             [](const GameState& s) { return s.incorrect().size(); })
      .def("submit_guess",
           [](GameState& s, const std::vector<std::string>& words) {
             auto result = s.submit_guess(to_guess(words));
             py::dict d;
             switch (result.kind) {
               case SubmissionResult::Kind::Correct:
                 d["result"] = "correct";
                 d["category"] = result.group->category;
                 d["color"] = std::string(to_string(result.group->color));
                 break;
               case SubmissionResult::Kind::Incorrect:
                 d["result"] = "incorrect";
                 break;
               case SubmissionResult::Kind::Invalid:
                 d["result"] = "invalid";
                 d["reason"] = std::string(to_string(*result.invalid));
                 break;
             }
             return d;
           })
      .def("auto_complete",
           [](GameState& s) {
             auto group = s.auto_complete();
             return group ? py::cast(group->category) : py::none().cast<py::object>();
           })
      .def("score", [](const GameState& s) { return score_dict(game_score(s)); });

  // ---- guess logic ----------------------------------------------------------
  m.def("parse_guess", [](const std::string& text, const std::vector<std::string>& candidates) {
    auto parsed = parse_guess(text, to_words(candidates));
    py::dict d;
    switch (parsed.kind) {
      case ParsedGuess::Kind::Valid:
        d["kind"] = "valid";
        d["words"] = from_guess(*parsed.guess);
        break;
      case ParsedGuess::Kind::Abstain:
        d["kind"] = "abstain";
        break;
      case ParsedGuess::Kind::Malformed:
        d["kind"] = "malformed";
        d["reason"] = parsed.reason;
        break;
    }
    return d;
  });

  py::class_<FinalGuessList>(m, "FinalGuessList")
      .def(py::init<>())
      .def("append",
           [](FinalGuessList& list, const std::vector<std::string>& words) {
             list.append(to_guess(words));
           })
      .def_property_readonly("processed_count", &FinalGuessList::processed_count)
      .def("thrice_repeated",
           [](const FinalGuessList& list) -> py::object {
             auto g = list.thrice_repeated();
             return g ? py::cast(from_guess(*g)) : py::none().cast<py::object>();
           })
      .def("find_disjoint",
           [](const FinalGuessList& list, int k) -> py::object {
             auto found = list.find_disjoint(k);
             if (!found) return py::none();
             py::list out;
             for (const auto& g : *found) out.append(from_guess(g));
             return out;
           },
           py::arg("k"))
      .def("actor2_decide",
           [](const FinalGuessList& list) { return decision_dict(actor2_decide(list)); })
      .def("actor_o1_decide",
           [](const FinalGuessList& list, int triplet_min, int pair_min) {
             return decision_dict(actor_o1_decide(list, {triplet_min, pair_min}));
           },
           py::arg("triplet_min_processed") = 13, py::arg("pair_min_processed") = 15);

  m.def("inject_moles",
        [](const std::vector<std::string>& remaining,
           const std::vector<std::vector<std::string>>& solved_groups, int count, uint64_t seed) {
          std::vector<SolutionGroup> solved;
          for (const auto& raw : solved_groups) {
            auto g = to_guess(raw);
            SolutionGroup group;
            group.words = g.words();
            solved.push_back(std::move(group));
          }
          DeterministicRng rng(seed);
          auto [words, moles] = inject_moles(to_words(remaining), solved, count, rng, seed);
          return py::make_tuple(from_words(words), from_words(moles.moles));
        },
        py::arg("remaining"), py::arg("solved_groups"), py::arg("count"), py::arg("seed") = 0);

  m.def("mole_reject",
        [](const std::vector<std::string>& guess, const std::vector<std::string>& moles) {
          MoleSet set;
          set.moles = to_words(moles);
          std::sort(set.moles.begin(), set.moles.end());
          return mole_reject(to_guess(guess), set);
        });

  m.def("format_bad_guesses", [](const std::vector<std::vector<std::string>>& guesses) {
    std::vector<Guess> gs;
    for (const auto& raw : guesses) gs.push_back(to_guess(raw));
    return format_bad_guesses(gs);
  });

  // ---- prompt catalog --------------------------------------------------------
  py::class_<PromptCatalog>(m, "PromptCatalog")
      .def_static("load", &PromptCatalog::load, py::arg("dir"))
      .def("ids", &PromptCatalog::ids)
      .def("checksum",
           [](const PromptCatalog& c, const std::string& id) { return c.checksum(id); })
      .def("brainstorm_pattern",
           [](const PromptCatalog& c, int index) { return c.brainstorm(index).pattern_line(); },
           py::arg("index"))
      .def("render",
           [](const PromptCatalog& c, const std::string& id, const std::vector<std::string>& words,
              const std::vector<std::vector<std::string>>& bad_guesses,
              py::object notes, py::object template_index) {
             PromptContext ctx;
             ctx.words = to_words(words);
             for (const auto& raw : bad_guesses) ctx.bad_guesses.push_back(to_guess(raw));
             if (!notes.is_none()) ctx.notes = notes.cast<std::string>();
             if (!template_index.is_none()) ctx.brainstorm = c.brainstorm(template_index.cast<int>());
             return render(c.get(id), ctx);
           },
           py::arg("id"), py::arg("words") = std::vector<std::string>{},
           py::arg("bad_guesses") = std::vector<std::vector<std::string>>{},
           py::arg("notes") = py::none(), py::arg("template_index") = py::none());

  // ---- running games -----------------------------------------------------------
  m.def("run_game",
        [](const Puzzle& puzzle, const std::string& approach, const PromptCatalog& catalog,
           py::object provider, const std::string& model_id, uint64_t seed) {
          auto cfg = make_config(approach, model_id, seed);
          std::shared_ptr<CompletionProvider> impl;
          if (py::isinstance<py::str>(provider)) {
            auto kind = provider.cast<std::string>();
            if (kind == "oracle") {
              impl = std::make_shared<OracleProvider>(puzzle);
            } else if (kind == "oracle_red_herring") {
              OracleOptions options;
              options.red_herring = OracleProvider::cross_group_herring(puzzle);
              options.naive_picks = true;
              impl = std::make_shared<OracleProvider>(puzzle, options);
            } else {
              throw Error("unknown provider \"" + kind + "\"");
            }
          } else {
            impl = std::make_shared<ScriptedProvider>(provider.cast<std::vector<std::string>>());
          }
          auto transcript = run_approach(puzzle, *impl, catalog, cfg);
          std::ostringstream jsonl;
          write_jsonl(transcript, jsonl);
          py::dict d;
          d["score"] = score_dict(transcript.final_score());
          d["aborted"] = transcript.aborted();
          d["provider_calls"] = transcript.recorded_calls().size();
          d["transcript_jsonl"] = jsonl.str();
          return d;
        },
        py::arg("puzzle"), py::arg("approach"), py::arg("catalog"), py::arg("provider") = "oracle",
        py::arg("model_id") = "oracle", py::arg("seed") = 0);

  m.def("run_experiment",
        [](const std::filesystem::path& config_path) {
          auto report = run_experiment(load_run_config(config_path));
          py::list rows;
          for (const auto& metrics : report.per_approach) {
            rows.append(py::module_::import("json").attr("loads")(metrics_to_json(metrics).dump()));
          }
          py::dict d;
          d["games"] = report.games;
          d["aborted"] = report.aborted;
          d["out"] = report.out.string();
          d["approaches"] = rows;
          return d;
        },
        py::arg("config_path"));

  m.def("compute_metrics",
        [](const std::filesystem::path& transcript_dir, const std::filesystem::path& dataset) {
          auto transcripts = load_transcript_dir(transcript_dir);
          auto puzzles = load_archive(dataset);
          auto metrics = compute_metrics(transcripts, puzzles);
          return py::module_::import("json").attr("loads")(metrics_to_json(metrics).dump());
        },
        py::arg("transcript_dir"), py::arg("dataset"));
}
