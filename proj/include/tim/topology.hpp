#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tim {

struct TopologyError : std::runtime_error {
  explicit TopologyError(const std::string& what) : std::runtime_error(what) {}
};

// K-user partially connected interference channel, rows = receivers,
// columns = transmitters: entry (i, j) is 1 iff receiver i hears
// transmitter j.  The diagonal (every desired link) is always 1; a zero
// diagonal entry is rejected at construction.  Rows are stored as bitmasks,
// bit j of row i = entry (i, j).
class TopologyMatrix {
 public:
  static constexpr int max_users = 64;

  // Identity topology: desired links only.
  explicit TopologyMatrix(int k);
  TopologyMatrix(int k, std::vector<std::uint64_t> rows);

  static TopologyMatrix identity(int k) { return TopologyMatrix(k); }
  static TopologyMatrix all_ones(int k);

  // Text format: K lines of K characters, each '0' or '1'.  A trailing
  // newline on the last row is accepted; ragged rows, foreign characters,
  // and zero diagonal entries are rejected with 1-based coordinates.
  static TopologyMatrix parse(const std::string& text);

  // K lines, newline-terminated, no other whitespace.
  std::string serialize() const;

  // Row-major K*K character string, for CSV cells and hashing.
  std::string bitstring() const;

  int users() const { return k_; }
  bool link(int rx, int tx) const { return (rows_[rx] >> tx) & 1u; }
  std::uint64_t row(int rx) const { return rows_[rx]; }

  // Copy with one extra interference link; flipping a diagonal or an
  // already-present link is a caller bug.
  TopologyMatrix with_link(int rx, int tx) const;

  int link_count() const;  // including the K desired links

  bool operator==(const TopologyMatrix& o) const { return k_ == o.k_ && rows_ == o.rows_; }
  bool operator!=(const TopologyMatrix& o) const { return !(*this == o); }
  bool operator<(const TopologyMatrix& o) const {
    if (k_ != o.k_) return k_ < o.k_;
    return rows_ < o.rows_;
  }

 private:
  int k_ = 0;
  std::vector<std::uint64_t> rows_;

  void check_invariants() const;
};

}  // namespace tim
