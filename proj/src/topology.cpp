#include "tim/topology.hpp"

#include <bit>

namespace tim {

TopologyMatrix::TopologyMatrix(int k) : k_(k), rows_(k > 0 ? k : 0, 0) {
  if (k <= 0 || k > max_users)
    throw TopologyError("user count must be in [1, " + std::to_string(max_users) +
                        "], got " + std::to_string(k));
  for (int i = 0; i < k_; ++i) rows_[i] = 1ull << i;
}

TopologyMatrix::TopologyMatrix(int k, std::vector<std::uint64_t> rows)
    : k_(k), rows_(std::move(rows)) {
  check_invariants();
}

TopologyMatrix TopologyMatrix::all_ones(int k) {
  TopologyMatrix t(k);
  std::uint64_t full = (k == 64) ? ~0ull : ((1ull << k) - 1);
  for (int i = 0; i < k; ++i) t.rows_[i] = full;
  return t;
}

void TopologyMatrix::check_invariants() const {
  if (k_ <= 0 || k_ > max_users)
    throw TopologyError("user count must be in [1, " + std::to_string(max_users) +
                        "], got " + std::to_string(k_));
  if (static_cast<int>(rows_.size()) != k_)
    throw TopologyError("expected " + std::to_string(k_) + " rows, got " +
                        std::to_string(rows_.size()));
  std::uint64_t valid = (k_ == 64) ? ~0ull : ((1ull << k_) - 1);
  for (int i = 0; i < k_; ++i) {
    if (rows_[i] & ~valid)
      throw TopologyError("row " + std::to_string(i + 1) + " has bits beyond column " +
                          std::to_string(k_));
    if (!((rows_[i] >> i) & 1u))
      throw TopologyError("desired link (" + std::to_string(i + 1) + ", " +
                          std::to_string(i + 1) + ") missing: diagonal must be 1");
  }
}

TopologyMatrix TopologyMatrix::parse(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);  // tolerate a missing final newline
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  if (lines.empty()) throw TopologyError("empty topology text");
  int k = static_cast<int>(lines.size());
  if (k > max_users)
    throw TopologyError("topology has " + std::to_string(k) + " rows; limit is " +
                        std::to_string(max_users));

  std::vector<std::uint64_t> rows(k, 0);
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(lines[i].size()) != k)
      throw TopologyError("row " + std::to_string(i + 1) + " has " +
                          std::to_string(lines[i].size()) + " columns, expected " +
                          std::to_string(k));
    for (int j = 0; j < k; ++j) {
      char c = lines[i][j];
      if (c == '1')
        rows[i] |= 1ull << j;
      else if (c != '0')
        throw TopologyError("row " + std::to_string(i + 1) + ", column " +
                            std::to_string(j + 1) + ": expected '0' or '1', got '" +
                            std::string(1, c) + "'");
    }
    if (!((rows[i] >> i) & 1u))
      throw TopologyError("desired link (" + std::to_string(i + 1) + ", " +
                          std::to_string(i + 1) + ") missing: diagonal must be 1");
  }
  return TopologyMatrix(k, std::move(rows));
}

std::string TopologyMatrix::serialize() const {
  std::string out;
  out.reserve(static_cast<size_t>(k_) * (k_ + 1));
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j < k_; ++j) out.push_back(link(i, j) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

std::string TopologyMatrix::bitstring() const {
  std::string out;
  out.reserve(static_cast<size_t>(k_) * k_);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) out.push_back(link(i, j) ? '1' : '0');
  return out;
}

TopologyMatrix TopologyMatrix::with_link(int rx, int tx) const {
  TopologyMatrix t(*this);
  t.rows_[rx] |= 1ull << tx;
  return t;
}

int TopologyMatrix::link_count() const {
  int n = 0;
  for (int i = 0; i < k_; ++i) n += std::popcount(rows_[i]);
  return n;
}

}  // namespace tim
