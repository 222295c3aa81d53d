#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qcover/design.hpp"
#include "qcover/error.hpp"

namespace qcover {

// Design files:
//
//   qcover-design v1
//   q=<q> n=<n> k=<k>
//   # comment lines; "# label: <text>" carries the design label
//   <k space-separated vectors per block, each n digits c_0 ... c_{n-1}>
//
// The reader canonicalizes every block and drops repeats. The writer emits the
// canonical RREF rows with blocks in enumeration order, so write(read(write(d)))
// reproduces write(d) byte for byte.
//
// Set-system files:
//
//   qcover-setsystem v1
//   v=<v> b=<blocks> size=<blocksize>
//   <sorted point indices per block>

inline constexpr std::string_view kDesignMagic = "qcover-design v1";
inline constexpr std::string_view kSetSystemMagic = "qcover-setsystem v1";

/// Malformed text input.
class ParseError : public InvalidArgument {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

void write_design(std::ostream& out, const SubspaceDesign& d);
std::string design_to_text(const SubspaceDesign& d);
SubspaceDesign read_design(std::istream& in);
SubspaceDesign design_from_text(std::string_view text);

SubspaceDesign load_design(const std::filesystem::path& path);
void save_design(const std::filesystem::path& path, const SubspaceDesign& d);

void write_set_system(std::ostream& out, const SetSystem& s);
std::string set_system_to_text(const SetSystem& s);
SetSystem read_set_system(std::istream& in);
SetSystem set_system_from_text(std::string_view text);

SetSystem load_set_system(const std::filesystem::path& path);
void save_set_system(const std::filesystem::path& path, const SetSystem& s);

}  // namespace qcover
