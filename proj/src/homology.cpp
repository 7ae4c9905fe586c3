#include "invt/homology.hpp"

#include <algorithm>
#include <sstream>

namespace invt {

std::string HdReport::text() const {
  if (bounded) {
    if (value < 0) return "M = 0 through degree " + std::to_string(D);
    return "hd = " + std::to_string(value) + " (certified through degree " + std::to_string(D) + ")";
  }
  return "hd >= " + std::to_string(value) + " observed (truncated at degree " + std::to_string(D) + ")";
}

long long TorTable::beta(int i, int j) const {
  auto it = dims.find({i, j});
  return it == dims.end() ? 0 : it->second;
}

int TorTable::max_index() const {
  int m = -1;
  for (auto& [ij, v] : dims) m = std::max(m, ij.first);
  return m;
}

TruncatedSeries TorTable::euler_series() const {
  std::vector<long long> c(D + 1, 0);
  for (auto& [ij, v] : dims)
    if (ij.second <= D) c[ij.second] += ij.first % 2 ? -v : v;
  return TruncatedSeries::from_ints(c, D);
}

TruncatedSeries TorTable::euler_character_series(std::size_t c) const {
  require(c < class_labels.size(), ErrorCode::Precondition, "no characters recorded for this class");
  std::vector<CyclotomicNumber> s(D + 1, CyclotomicNumber(1));
  for (auto& [ij, v] : characters)
    if (ij.second <= D) s[ij.second] += ij.first % 2 ? -v[c] : v[c];
  return {s, D};
}

std::string TorTable::betti_table() const {
  int top = max_index();
  std::ostringstream os;
  if (top < 0) return "(zero)\n";
  int lo = 0, hi = 0;
  bool first = true;
  for (auto& [ij, v] : dims) {
    int r = ij.second - ij.first;
    lo = first ? r : std::min(lo, r);
    hi = first ? r : std::max(hi, r);
    first = false;
  }
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head{""}, total{"total:"};
  for (int i = 0; i <= top; ++i) {
    head.push_back(std::to_string(i));
    long long t = 0;
    for (auto& [ij, v] : dims)
      if (ij.first == i) t += v;
    total.push_back(std::to_string(t));
  }
  cells.push_back(head);
  cells.push_back(total);
  for (int r = lo; r <= hi; ++r) {
    std::vector<std::string> row{std::to_string(r) + ":"};
    for (int i = 0; i <= top; ++i) {
      long long b = beta(i, i + r);
      row.push_back(b ? std::to_string(b) : ".");
    }
    cells.push_back(row);
  }
  std::vector<std::size_t> width(top + 2, 0);
  for (auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  for (auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += ' ';
      line += std::string(width[c] - row[c].size(), ' ') + row[c];
    }
    os << line << '\n';
  }
  return os.str();
}

std::string TorTable::csv() const {
  std::ostringstream os;
  os << "i,j,dim";
  for (auto& l : class_labels) os << ",chi_" << l;
  os << '\n';
  for (auto& [ij, v] : dims) {
    os << ij.first << ',' << ij.second << ',' << v;
    auto it = characters.find(ij);
    for (std::size_t c = 0; c < class_labels.size(); ++c)
      os << ',' << (it == characters.end() ? std::string() : it->second[c].display());
    os << '\n';
  }
  return os.str();
}

void TorTable::finish(int min_generator_degree, int index_cap) {
  hd.D = D;
  int top = max_index();
  hd.value = top;
  if (top < 0 || top == index_cap) {
    hd.bounded = true;
    return;
  }
  int last = 0;
  for (auto& [ij, v] : dims)
    if (ij.first == top) last = std::max(last, ij.second);
  hd.bounded = last + min_generator_degree <= D;
}

}  // namespace invt
