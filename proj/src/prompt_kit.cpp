#include "connections/prompt_kit.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "connections/provider.hpp"

namespace connections {

namespace {

constexpr std::string_view kTokenOpen = "[[{";
constexpr std::string_view kTokenClose = "}]]";
const std::vector<std::string> kKnownPlaceholders = {"bad_guesses", "notes", "template", "words"};

std::vector<std::string> scan_placeholders(std::string_view body, const std::string& id) {
  std::vector<std::string> found;
  size_t pos = 0;
  while ((pos = body.find(kTokenOpen, pos)) != std::string_view::npos) {
    auto end = body.find(kTokenClose, pos);
    if (end == std::string_view::npos) {
      throw CatalogError("template \"" + id + "\": unterminated placeholder");
    }
    std::string name(body.substr(pos + kTokenOpen.size(), end - pos - kTokenOpen.size()));
    if (std::find(kKnownPlaceholders.begin(), kKnownPlaceholders.end(), name) ==
        kKnownPlaceholders.end()) {
      throw CatalogError("template \"" + id + "\": unknown placeholder \"" + name + "\"");
    }
    if (std::find(found.begin(), found.end(), name) == found.end()) found.push_back(name);
    pos = end + kTokenClose.size();
  }
  return found;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatalogError("cannot read template file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

bool PromptTemplate::uses(std::string_view placeholder) const {
  return std::find(placeholders.begin(), placeholders.end(), placeholder) != placeholders.end();
}

std::string BrainstormTemplate::pattern_line() const {
  auto nl = body.find('\n');
  return nl == std::string::npos ? body : body.substr(0, nl);
}

std::string format_bad_guesses(const std::vector<Guess>& guesses) {
  if (guesses.empty()) return "Incorrect guesses so far: none.";
  std::string out = "Incorrect guesses so far:";
  for (const auto& g : guesses) {
    out += '\n';
    out += g.to_line();
  }
  return out;
}

std::string render(const PromptTemplate& tmpl, const PromptContext& ctx) {
  std::string out;
  out.reserve(tmpl.body.size());
  std::string_view body = tmpl.body;
  size_t pos = 0;
  while (true) {
    auto open = body.find(kTokenOpen, pos);
    if (open == std::string_view::npos) {
      out += body.substr(pos);
      break;
    }
    out += body.substr(pos, open - pos);
    auto close = body.find(kTokenClose, open);
    std::string name(body.substr(open + kTokenOpen.size(), close - open - kTokenOpen.size()));
    if (name == "bad_guesses") {
      out += format_bad_guesses(ctx.bad_guesses);
    } else if (name == "words") {
      if (ctx.words.empty()) throw MissingContextFieldError("words");
      out += join_words(ctx.words);
    } else if (name == "notes") {
      if (!ctx.notes) throw MissingContextFieldError("notes");
      out += *ctx.notes;
    } else if (name == "template") {
      if (!ctx.brainstorm) throw MissingContextFieldError("template");
      out += ctx.brainstorm->body;
    }
    pos = close + kTokenClose.size();
  }
  return out;
}

PromptCatalog PromptCatalog::load(const std::filesystem::path& dir) {
  auto manifest_path = dir / "manifest.json";
  std::ifstream manifest_in(manifest_path);
  if (!manifest_in) throw CatalogError("cannot open " + manifest_path.string());
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(manifest_in);
  } catch (const nlohmann::json::parse_error& e) {
    throw CatalogError("bad manifest " + manifest_path.string() + ": " + e.what());
  }

  PromptCatalog catalog;
  catalog.brainstorms_.resize(kBrainstormTemplateCount);
  std::vector<bool> have_brainstorm(kBrainstormTemplateCount, false);

  for (const auto& [id, checksum] : manifest.at("templates").items()) {
    auto body = read_file(dir / id);
    auto actual = prompt_hash(body);
    if (actual != checksum.get<std::string>()) {
      throw CatalogError("template \"" + id + "\" does not match its pinned checksum (" + actual +
                         " vs " + checksum.get<std::string>() + ")");
    }
    catalog.checksums_[id] = actual;

    if (id.starts_with("brainstorm.")) {
      int index = std::stoi(id.substr(std::string_view("brainstorm.").size()));
      if (index < 1 || index > kBrainstormTemplateCount) {
        throw CatalogError("brainstorm template index out of range: " + id);
      }
      catalog.brainstorms_[static_cast<size_t>(index - 1)] = BrainstormTemplate{index, body};
      have_brainstorm[static_cast<size_t>(index - 1)] = true;
    }
    PromptTemplate tmpl;
    tmpl.id = id;
    tmpl.placeholders = scan_placeholders(body, id);
    tmpl.body = std::move(body);
    catalog.templates_.emplace(id, std::move(tmpl));
  }

  for (int i = 0; i < kBrainstormTemplateCount; ++i) {
    if (!have_brainstorm[static_cast<size_t>(i)]) {
      throw CatalogError("catalog is missing brainstorm template " + std::to_string(i + 1));
    }
  }
  return catalog;
}

const PromptTemplate& PromptCatalog::get(std::string_view id) const {
  auto it = templates_.find(id);
  if (it == templates_.end()) throw UnknownTemplateError(std::string(id));
  return it->second;
}

const BrainstormTemplate& PromptCatalog::brainstorm(int index) const {
  if (index < 1 || index > kBrainstormTemplateCount) {
    throw UnknownTemplateError("brainstorm." + std::to_string(index));
  }
  return brainstorms_[static_cast<size_t>(index - 1)];
}

std::pair<const BrainstormTemplate&, int> PromptCatalog::next_brainstorm(int cursor) const {
  const auto& tmpl = brainstorms_[static_cast<size_t>(cursor % kBrainstormTemplateCount)];
  return {tmpl, cursor + 1};
}

std::vector<std::string> PromptCatalog::ids() const {
  std::vector<std::string> out;
  out.reserve(templates_.size());
  for (const auto& [id, _] : templates_) out.push_back(id);
  return out;
}

const std::string& PromptCatalog::checksum(std::string_view id) const {
  auto it = checksums_.find(id);
  if (it == checksums_.end()) throw UnknownTemplateError(std::string(id));
  return it->second;
}

}  // namespace connections
