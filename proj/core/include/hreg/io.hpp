#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "hreg/graphs.hpp"
#include "hreg/partitions.hpp"

namespace hreg {

// Line-oriented text formats. '#' starts a comment. Parse errors are
// Error{Format}, Error{IndexOutOfRange}, Error{DuplicateEdge} and so on, with
// the message starting "line N:". Formatting always emits the canonical form,
// edges in lexicographic order.
//
//   bg <nLeft> <nRight> <m>         then m lines "<l> <r>"
//   h3 <n1> <n2> <n3> <m>           then m lines "<v1> <v2> <v3>"
//   vp <n> <k>                      then one line of n labels in 0..k-1
//   tr <nA> <nB> <nC>               then bg sections for AB, AC, BC
//   tp <c> <s1> ... <sc>            class sizes, then a vp section over
//                                   s1 + ... + sc vertices, then sections
//                                   "pair <i> <j>" each followed by a bg

BipartiteGraph parse_graph(std::string_view text);
std::string format_graph(const BipartiteGraph& g);

ThreeGraph parse_threegraph(std::string_view text);
std::string format_threegraph(const ThreeGraph& h);

VertexPartition parse_partition(std::string_view text);
std::string format_partition(const VertexPartition& p);

Triad parse_triad(std::string_view text);
std::string format_triad(const Triad& t);

/// Also runs validate_two_partition and reports the first violation with the
/// cluster pair it concerns.
TwoPartition parse_twopartition(std::string_view text);
std::string format_twopartition(const TwoPartition& tp);

BipartiteGraph load_graph(const std::filesystem::path& path);
void save_graph(const std::filesystem::path& path, const BipartiteGraph& g);
ThreeGraph load_threegraph(const std::filesystem::path& path);
void save_threegraph(const std::filesystem::path& path, const ThreeGraph& h);
VertexPartition load_partition(const std::filesystem::path& path);
void save_partition(const std::filesystem::path& path, const VertexPartition& p);
Triad load_triad(const std::filesystem::path& path);
void save_triad(const std::filesystem::path& path, const Triad& t);
TwoPartition load_twopartition(const std::filesystem::path& path);
void save_twopartition(const std::filesystem::path& path, const TwoPartition& tp);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace hreg
