#include "netbandit/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "netbandit/errors.hpp"
#include "netbandit/rng.hpp"

namespace netbandit {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(std::move(tok));
  return out;
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

void CitationLoader::add_content(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    auto tok = split_ws(line);
    if (tok.size() < 3)
      throw ParseError(source_name, lineno, "expected '<id> <attributes...> <label>'");
    const std::size_t d = tok.size() - 2;
    if (dimension_ == 0) {
      dimension_ = d;
    } else if (d != dimension_) {
      throw FormatError(source_name + ":" + std::to_string(lineno) + ": node '" + tok[0] +
                        "' has " + std::to_string(d) + " attributes, expected " +
                        std::to_string(dimension_));
    }
    std::vector<std::uint32_t> ones;
    for (std::size_t k = 0; k < d; ++k) {
      const auto& t = tok[k + 1];
      if (t == "1") {
        ones.push_back(static_cast<std::uint32_t>(k));
      } else if (t != "0") {
        throw ParseError(source_name, lineno, "attribute '" + t + "' is not 0 or 1");
      }
    }
    ids_.push_back(tok.front());
    labels_.push_back(tok.back());
    attributes_.push_back(std::move(ones));
    ++stats_.content_lines;
  }
}

void CitationLoader::add_cites(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    auto tok = split_ws(line);
    if (tok.size() != 2) throw ParseError(source_name, lineno, "expected '<cited_id> <citing_id>'");
    cites_.push_back({std::move(tok[0]), std::move(tok[1])});
    ++stats_.cites_lines;
  }
}

LoadedDataset CitationLoader::finish() {
  if (ids_.empty()) throw FormatError("dataset has no nodes");
  std::unordered_map<std::string, NodeIndex> index;
  index.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index.emplace(ids_[i], static_cast<NodeIndex>(i)).second)
      throw FormatError("duplicate node id '" + ids_[i] + "' in content");
  }

  std::set<std::pair<NodeIndex, NodeIndex>> seen;
  for (const auto& c : cites_) {
    auto a = index.find(c.a);
    auto b = index.find(c.b);
    if (a == index.end() || b == index.end()) {
      ++stats_.unknown_endpoint_lines;
      continue;
    }
    if (a->second == b->second) {
      ++stats_.self_loop_lines;
      continue;
    }
    auto key = std::minmax(a->second, b->second);
    if (!seen.emplace(key.first, key.second).second) ++stats_.duplicate_lines;
  }

  std::vector<Edge> edges;
  edges.reserve(seen.size());
  for (const auto& [u, v] : seen) edges.push_back({u, v, 0.0});

  LoadedDataset out{AttributedGraph(std::move(ids_), std::move(labels_), dimension_,
                                    std::move(attributes_), std::move(edges)),
                    stats_};
  *this = CitationLoader{};
  return out;
}

LoadedDataset load_citation_dataset(std::istream& content, std::istream& cites) {
  CitationLoader loader;
  loader.add_content(content);
  loader.add_cites(cites);
  return loader.finish();
}

std::filesystem::path default_data_root() {
  if (const char* env = std::getenv("NETBANDIT_DATA_ROOT"); env && *env) return env;
  return "data";
}

DatasetFiles locate_dataset(const std::filesystem::path& root, const std::string& name) {
  namespace fs = std::filesystem;
  fs::path dir = root / name;
  if (!fs::is_directory(dir) && fs::is_directory(name)) dir = name;
  if (!fs::is_directory(dir)) throw IoError("dataset directory not found: " + dir.string());

  DatasetFiles files;
  files.name = fs::path(name).filename().string();
  if (files.name.empty()) files.name = dir.parent_path().filename().string();

  const auto content = dir / (files.name + ".content");
  const auto cites = dir / (files.name + ".cites");
  if (fs::is_regular_file(content) && fs::is_regular_file(cites)) {
    files.content.push_back(content);
    files.cites.push_back(cites);
    return files;
  }

  std::vector<fs::path> stems;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".content") stems.push_back(entry.path());
  }
  std::sort(stems.begin(), stems.end());
  for (const auto& c : stems) {
    auto s = c;
    s.replace_extension(".cites");
    if (fs::is_regular_file(s)) {
      files.content.push_back(c);
      files.cites.push_back(s);
    }
  }
  if (files.content.empty())
    throw IoError("no .content/.cites pair found in " + dir.string());
  return files;
}

LoadedDataset load_dataset(const DatasetFiles& files) {
  CitationLoader loader;
  for (const auto& p : files.content) {
    std::ifstream in(p);
    if (!in) throw IoError("cannot open " + p.string());
    loader.add_content(in, p.filename().string());
  }
  for (const auto& p : files.cites) {
    std::ifstream in(p);
    if (!in) throw IoError("cannot open " + p.string());
    loader.add_cites(in, p.filename().string());
  }
  return loader.finish();
}

std::uint64_t dataset_content_hash(const DatasetFiles& files) {
  std::uint64_t h = fnv1a64("netbandit-dataset");
  auto absorb = [&h](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open " + p.string());
    std::string buf(1 << 16, '\0');
    while (in) {
      in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
      h = fnv1a64(std::string_view(buf.data(), static_cast<std::size_t>(in.gcount())), h);
    }
  };
  for (const auto& p : files.content) absorb(p);
  for (const auto& p : files.cites) absorb(p);
  return h;
}

}  // namespace netbandit
