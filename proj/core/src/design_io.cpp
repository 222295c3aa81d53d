#include "qcover/design_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qcover {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::uint64_t parse_number(std::string_view text, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

// Parses "key=<number>" for the expected key.
std::uint64_t parse_field(std::string_view token, std::string_view key, std::size_t line) {
  if (token.size() <= key.size() + 1 || token.substr(0, key.size()) != key || token[key.size()] != '=') {
    throw ParseError(line, "expected '" + std::string(key) + "=<value>', got '" + std::string(token) + "'");
  }
  return parse_number(token.substr(key.size() + 1), line);
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  return out;
}

constexpr std::string_view kLabelPrefix = "# label: ";

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : InvalidArgument("line " + std::to_string(line) + ": " + what), line_(line) {}

void write_design(std::ostream& out, const SubspaceDesign& d) {
  if (d.block_dimension() == 0) throw InvalidArgument("design files need block dimension >= 1");
  out << kDesignMagic << '\n';
  out << "q=" << d.q() << " n=" << d.n() << " k=" << d.block_dimension() << '\n';
  if (!d.label().empty()) out << kLabelPrefix << d.label() << '\n';
  for (const auto& b : d.blocks()) {
    bool first = true;
    for (Code row : b.rows()) {
      if (!first) out << ' ';
      out << d.space().format(row);
      first = false;
    }
    out << '\n';
  }
}

std::string design_to_text(const SubspaceDesign& d) {
  std::ostringstream os;
  write_design(os, d);
  return os.str();
}

SubspaceDesign read_design(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || strip_cr(line) != kDesignMagic) {
    throw ParseError(line_no, "missing '" + std::string(kDesignMagic) + "' header");
  }
  ++line_no;
  if (!std::getline(in, line)) throw ParseError(line_no, "missing parameter line");
  const auto params = split_ws(strip_cr(line));
  if (params.size() != 3) throw ParseError(line_no, "expected 'q=<q> n=<n> k=<k>'");
  const auto q = parse_field(params[0], "q", line_no);
  const auto n = parse_field(params[1], "n", line_no);
  const auto k = parse_field(params[2], "k", line_no);
  if (q > Field::kMaxOrder || n > 64 || n < 1 || k < 1 || k > n) {
    throw ParseError(line_no, "parameters out of range");
  }

  SpacePtr space;
  try {
    space = VectorSpace::standard(static_cast<std::uint32_t>(q), static_cast<unsigned>(n));
  } catch (const InvalidArgument& e) {
    throw ParseError(line_no, e.what());
  }

  std::string label;
  std::vector<Subspace> blocks;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.rfind(kLabelPrefix, 0) == 0) label = line.substr(kLabelPrefix.size());
      continue;
    }
    const auto tokens = split_ws(line);
    if (tokens.size() != k) {
      throw ParseError(line_no, "block has " + std::to_string(tokens.size()) + " vectors, expected " +
                                    std::to_string(k));
    }
    std::vector<Code> rows;
    for (auto tok : tokens) {
      try {
        rows.push_back(space->parse(tok));
      } catch (const InvalidArgument& e) {
        throw ParseError(line_no, e.what());
      }
    }
    Subspace block = Subspace::span(space, rows);
    if (block.dimension() != k) {
      throw ParseError(line_no, "block vectors span dimension " + std::to_string(block.dimension()) +
                                    ", expected " + std::to_string(k));
    }
    blocks.push_back(std::move(block));
  }
  return SubspaceDesign::deduplicated(space, static_cast<unsigned>(k), std::move(blocks), std::move(label));
}

SubspaceDesign design_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_design(in);
}

SubspaceDesign load_design(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_design(in);
}

void save_design(const std::filesystem::path& path, const SubspaceDesign& d) {
  auto out = open_out(path);
  write_design(out, d);
}

void write_set_system(std::ostream& out, const SetSystem& s) {
  out << kSetSystemMagic << '\n';
  out << "v=" << s.points() << " b=" << s.size() << " size=" << s.block_size() << '\n';
  for (const auto& b : s.blocks()) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) out << ' ';
      out << b[i];
    }
    out << '\n';
  }
}

std::string set_system_to_text(const SetSystem& s) {
  std::ostringstream os;
  write_set_system(os, s);
  return os.str();
}

SetSystem read_set_system(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || strip_cr(line) != kSetSystemMagic) {
    throw ParseError(line_no, "missing '" + std::string(kSetSystemMagic) + "' header");
  }
  ++line_no;
  if (!std::getline(in, line)) throw ParseError(line_no, "missing parameter line");
  const auto params = split_ws(strip_cr(line));
  if (params.size() != 3) throw ParseError(line_no, "expected 'v=<v> b=<blocks> size=<blocksize>'");
  const auto v = parse_field(params[0], "v", line_no);
  const auto b = parse_field(params[1], "b", line_no);
  const auto size = parse_field(params[2], "size", line_no);
  if (v > UINT32_MAX) throw ParseError(line_no, "too many points");

  std::vector<std::vector<std::uint32_t>> blocks;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::uint32_t> block;
    for (auto tok : split_ws(line)) {
      const auto p = parse_number(tok, line_no);
      if (p >= v) throw ParseError(line_no, "point " + std::to_string(p) + " out of range");
      block.push_back(static_cast<std::uint32_t>(p));
    }
    if (block.size() != size) throw ParseError(line_no, "block size does not match header");
    blocks.push_back(std::move(block));
  }
  if (blocks.size() != b) throw ParseError(line_no, "block count does not match header");
  try {
    return SetSystem(static_cast<std::uint32_t>(v), std::move(blocks));
  } catch (const InvalidArgument& e) {
    throw ParseError(line_no, e.what());
  }
}

SetSystem set_system_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_set_system(in);
}

SetSystem load_set_system(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_set_system(in);
}

void save_set_system(const std::filesystem::path& path, const SetSystem& s) {
  auto out = open_out(path);
  write_set_system(out, s);
}

}  // namespace qcover
