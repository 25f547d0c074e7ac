#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "flatdeg/truth_table.hpp"

namespace flatdeg {

using BigInt = boost::multiprecision::cpp_int;

// Default cap on how many flats a single enumeration/scan may touch.
inline constexpr uint64_t kDefaultFlatBudget = 100'000'000;

/*! A k-dimensional affine subspace of F_2^n in canonical form.
 *
 * Canonical form: the basis rows are in reduced row echelon form under the
 * coordinate order x_1 < x_2 < ... (bit i-1 of a mask is the coefficient of
 * x_i, the pivot of a row is its lowest set bit, pivots strictly increase,
 * and every pivot column is zero in the other rows); the offset is zero at
 * every pivot position. Two (basis, offset) pairs describe the same point
 * set exactly when their canonical forms are identical.
 */
class Flat {
public:
  // Canonicalize an arbitrary spanning description; throws
  // std::invalid_argument on dependent rows or out-of-range masks.
  static Flat canonical(int n, std::span<const uint32_t> basis,
                        uint32_t offset);
  static Flat full_space(int n);
  static Flat single_point(int n, uint32_t point);

  int ambient() const { return n_; }
  int dim() const { return k_; }
  std::span<const uint32_t> basis() const { return rows_; }
  uint32_t offset() const { return offset_; }

  bool contains(uint32_t point) const;

  // Text format: "n=<n> k=<k> basis=<hex>,<hex>,... offset=<hex>",
  // lowercase hex masks, most significant digit first; k=0 prints an
  // empty basis field.
  std::string to_text() const;
  static Flat from_text(std::string_view text);

  friend bool operator==(const Flat&, const Flat&) = default;

private:
  friend class FlatEnumerator;
  friend class FlatPointEnumerator;
  Flat(int n, int k, std::vector<uint32_t> rows, uint32_t offset)
      : n_(n), k_(k), rows_(std::move(rows)), offset_(offset) {}

  int n_ = 0, k_ = 0;
  std::vector<uint32_t> rows_;
  uint32_t offset_ = 0;
};

// Exact number of k-flats of F_2^n:
//   2^(n-k) * prod_{i=0}^{k-1} (2^(n-i)-1) / (2^(k-i)-1).
BigInt count_flats(int n, int k);

// Number of k-dimensional linear subspaces (Gaussian binomial); equals the
// number of k-flats through any fixed point.
BigInt count_subspaces(int n, int k);

/*! Streams every canonical k-flat of F_2^n exactly once.
 *
 * Order is fixed: ascending pivot-column set (as a mask value), then the
 * basis free-entry counter (bits assigned row by row, positions ascending),
 * then the offset counter (bits assigned to non-pivot positions ascending).
 * seek() gives O(log) random access, which is what partitioned scans use
 * to split the index range across workers.
 *
 * Throws BudgetError when count_flats(n, k) exceeds the budget.
 */
class FlatEnumerator {
public:
  FlatEnumerator(int n, int k, uint64_t budget = kDefaultFlatBudget);

  uint64_t total() const { return total_; }
  uint64_t index() const { return index_; }
  bool done() const { return index_ >= total_; }

  std::span<const uint32_t> rows() const { return rows_; }
  uint32_t offset() const { return offset_mask_; }
  Flat current() const;

  void advance();
  void seek(uint64_t index);

private:
  struct Block {
    uint32_t pivots;
    uint64_t start;
    int free_bits;
  };

  void load_block(std::size_t bi);
  void rebuild_rows();
  void rebuild_offset();

  int n_, k_;
  uint64_t total_ = 0, index_ = 0;
  std::vector<Block> blocks_;
  std::size_t block_i_ = 0;
  uint64_t basis_counter_ = 0, offset_counter_ = 0;
  uint64_t basis_count_ = 1, offset_count_ = 1;
  std::vector<int> pivot_pos_, nonpivot_pos_;
  std::vector<std::pair<int, int>> free_slots_;  // (row, position)
  std::vector<uint32_t> rows_;
  uint32_t offset_mask_ = 0;
};

/*! Streams the canonical k-flats whose point set contains a given point;
 * there are count_subspaces(n, k) of them regardless of the point. Order:
 * ascending pivot set, then basis counter (as in FlatEnumerator). */
class FlatPointEnumerator {
public:
  FlatPointEnumerator(int n, int k, uint32_t point,
                      uint64_t budget = kDefaultFlatBudget);

  uint64_t total() const { return total_; }
  uint64_t index() const { return index_; }
  bool done() const { return index_ >= total_; }

  std::span<const uint32_t> rows() const { return rows_; }
  uint32_t offset() const { return offset_mask_; }
  Flat current() const;

  void advance();

private:
  void load_block(std::size_t bi);
  void rebuild_rows();

  int n_, k_;
  uint32_t point_;
  uint64_t total_ = 0, index_ = 0;
  struct Block {
    uint32_t pivots;
    uint64_t start;
    int free_bits;
  };
  std::vector<Block> blocks_;
  std::size_t block_i_ = 0;
  uint64_t basis_counter_ = 0;
  uint64_t basis_count_ = 1;
  std::vector<int> pivot_pos_;
  std::vector<std::pair<int, int>> free_slots_;
  std::vector<uint32_t> rows_;
  uint32_t offset_mask_ = 0;
};

// The restriction g(y) = f(offset ^ y_1 b_1 ^ ... ^ y_k b_k) as a k-variable
// table. The overload taking a raw basis accepts any independent basis (not
// necessarily canonical), which is how basis-invariance is exercised.
TruthTable restrict_to(const TruthTable& tt, const Flat& flat);
TruthTable restrict_to(const TruthTable& tt, std::span<const uint32_t> basis,
                       uint32_t offset);

// Hot path used by scans: write the restricted table into out (pre-sized
// word_count(k) words); no allocation, no validation.
void restrict_words(const TruthTable& tt, std::span<const uint32_t> rows,
                    uint32_t offset, int k, std::span<uint64_t> out);

// XOR of tt over the flat's 2^k points; 1 exactly when the restriction has
// full degree k (k >= 1).
bool flat_parity(const TruthTable& tt, const Flat& flat);

}  // namespace flatdeg
