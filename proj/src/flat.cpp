#include "flatdeg/flat.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>

#include "flatdeg/errors.hpp"

namespace flatdeg {

namespace {

void check_nk(int n, int k) {
  if (n < 0 || n > kMaxVars)
    throw std::invalid_argument("n out of range");
  if (k < 0 || k > n)
    throw std::invalid_argument("k must satisfy 0 <= k <= n");
}

// Reduced row echelon basis keyed by pivot position (lowest set bit).
// Returns rows sorted by pivot; throws if the input rows are dependent.
std::vector<uint32_t> rref_basis(int n, std::span<const uint32_t> basis) {
  std::vector<uint32_t> rows;
  rows.reserve(basis.size());
  for (uint32_t raw : basis) {
    if (raw >= (uint32_t(1) << n))
      throw std::invalid_argument("basis mask out of range for n");
    uint32_t r = raw;
    for (uint32_t row : rows)
      if (r & (row & -row)) r ^= row;
    if (r == 0)
      throw std::invalid_argument("basis rows are linearly dependent");
    // clear the new pivot from the existing rows
    uint32_t pivot_bit = r & -r;
    for (uint32_t& row : rows)
      if (row & pivot_bit) row ^= r;
    rows.push_back(r);
  }
  std::sort(rows.begin(), rows.end(),
            [](uint32_t a, uint32_t b) { return (a & -a) < (b & -b); });
  return rows;
}

uint32_t reduce_offset(std::span<const uint32_t> rows, uint32_t offset) {
  for (uint32_t row : rows)
    if (offset & (row & -row)) offset ^= row;
  return offset;
}

}  // namespace

Flat Flat::canonical(int n, std::span<const uint32_t> basis, uint32_t offset) {
  check_nk(n, int(basis.size()));
  if (offset >= (uint32_t(1) << n))
    throw std::invalid_argument("offset out of range for n");
  std::vector<uint32_t> rows = rref_basis(n, basis);
  uint32_t off = reduce_offset(rows, offset);
  int k = int(rows.size());
  return Flat(n, k, std::move(rows), off);
}

Flat Flat::full_space(int n) {
  check_nk(n, n);
  std::vector<uint32_t> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = uint32_t(1) << i;
  return Flat(n, n, std::move(rows), 0);
}

Flat Flat::single_point(int n, uint32_t point) {
  check_nk(n, 0);
  if (point >= (uint32_t(1) << n))
    throw std::invalid_argument("point out of range for n");
  return Flat(n, 0, {}, point);
}

bool Flat::contains(uint32_t point) const {
  uint32_t z = point ^ offset_;
  for (uint32_t row : rows_)
    if (z & (row & -row)) z ^= row;
  return z == 0;
}

std::string Flat::to_text() const {
  auto hex = [](uint32_t v) {
    char buf[16];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, 16);
    return std::string(buf, end);
  };
  std::string out = "n=" + std::to_string(n_) + " k=" + std::to_string(k_) +
                    " basis=";
  for (int j = 0; j < k_; ++j) {
    if (j) out += ',';
    out += hex(rows_[j]);
  }
  out += " offset=" + hex(offset_);
  return out;
}

Flat Flat::from_text(std::string_view text) {
  auto fail = [&](const char* what, std::size_t at) -> ParseError {
    return ParseError(std::string("flat text: ") + what, at);
  };
  auto expect = [&](std::string_view token, std::size_t& pos) {
    if (text.substr(pos, token.size()) != token)
      throw fail("expected token", pos);
    pos += token.size();
  };
  auto number = [&](std::size_t& pos, int base) -> uint64_t {
    uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(),
                                     value, base);
    if (ec != std::errc() || ptr == text.data() + pos)
      throw fail("expected a number", pos);
    pos = std::size_t(ptr - text.data());
    return value;
  };
  std::size_t pos = 0;
  expect("n=", pos);
  int n = int(number(pos, 10));
  expect(" k=", pos);
  int k = int(number(pos, 10));
  check_nk(n, k);
  expect(" basis=", pos);
  std::vector<uint32_t> rows;
  for (int j = 0; j < k; ++j) {
    if (j) expect(",", pos);
    rows.push_back(uint32_t(number(pos, 16)));
  }
  expect(" offset=", pos);
  uint32_t offset = uint32_t(number(pos, 16));
  if (pos != text.size()) throw fail("trailing characters", pos);
  if (offset >= (uint32_t(1) << n)) throw fail("offset out of range", pos);
  return Flat::canonical(n, rows, offset);
}

BigInt count_subspaces(int n, int k) {
  check_nk(n, k);
  BigInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (BigInt(1) << (n - i)) - 1;
    den *= (BigInt(1) << (k - i)) - 1;
  }
  return num / den;  // exact: Gaussian binomial
}

BigInt count_flats(int n, int k) {
  return count_subspaces(n, k) << (n - k);
}

// ---------------------------------------------------------------------------
// FlatEnumerator

namespace {

// Shared block construction: one block per pivot-column set, in ascending
// mask order, carrying the cumulative start index.
template <typename Block>
uint64_t build_blocks(int n, int k, uint64_t per_basis_factor,
                      std::vector<Block>& blocks) {
  uint64_t start = 0;
  if (k == 0) {
    blocks.push_back(Block{0, 0, 0});
    return per_basis_factor;
  }
  uint32_t mask = (uint32_t(1) << k) - 1;
  uint32_t limit = uint32_t(1) << n;
  while (mask < limit) {
    // free positions: for row with pivot p, the non-pivot columns above p
    int free_bits = 0;
    uint32_t m = mask;
    while (m) {
      int p = std::countr_zero(m);
      m &= m - 1;
      free_bits += std::popcount(~mask & (limit - 1) & ~((uint32_t(2) << p) - 1));
    }
    blocks.push_back(Block{mask, start, free_bits});
    start += (uint64_t(1) << free_bits) * per_basis_factor;
    // Gosper's hack: next k-subset mask in ascending order
    uint32_t c = mask & -mask;
    uint32_t r = mask + c;
    mask = r | (((mask ^ r) >> 2) / c);
    if (r >= limit) break;
  }
  return start;
}

}  // namespace

FlatEnumerator::FlatEnumerator(int n, int k, uint64_t budget) : n_(n), k_(k) {
  check_nk(n, k);
  BigInt total = count_flats(n, k);
  if (total > budget)
    throw BudgetError("enumerating " + total.str() + " flats exceeds budget of " +
                      std::to_string(budget));
  total_ = build_blocks(n, k, uint64_t(1) << (n - k), blocks_);
  rows_.resize(k);
  load_block(0);
}

void FlatEnumerator::load_block(std::size_t bi) {
  block_i_ = bi;
  if (bi >= blocks_.size()) return;
  const Block& blk = blocks_[bi];
  pivot_pos_.clear();
  nonpivot_pos_.clear();
  for (int i = 0; i < n_; ++i) {
    if (blk.pivots >> i & 1)
      pivot_pos_.push_back(i);
    else
      nonpivot_pos_.push_back(i);
  }
  free_slots_.clear();
  for (int j = 0; j < k_; ++j)
    for (int pos : nonpivot_pos_)
      if (pos > pivot_pos_[j]) free_slots_.emplace_back(j, pos);
  basis_count_ = uint64_t(1) << blk.free_bits;
  offset_count_ = uint64_t(1) << (n_ - k_);
  basis_counter_ = 0;
  offset_counter_ = 0;
  rebuild_rows();
  rebuild_offset();
}

void FlatEnumerator::rebuild_rows() {
  for (int j = 0; j < k_; ++j) rows_[j] = uint32_t(1) << pivot_pos_[j];
  for (std::size_t b = 0; b < free_slots_.size(); ++b)
    if (basis_counter_ >> b & 1)
      rows_[free_slots_[b].first] |= uint32_t(1) << free_slots_[b].second;
}

void FlatEnumerator::rebuild_offset() {
  offset_mask_ = 0;
  for (std::size_t b = 0; b < nonpivot_pos_.size(); ++b)
    if (offset_counter_ >> b & 1)
      offset_mask_ |= uint32_t(1) << nonpivot_pos_[b];
}

void FlatEnumerator::advance() {
  ++index_;
  if (done()) return;
  if (++offset_counter_ < offset_count_) {
    rebuild_offset();
    return;
  }
  offset_counter_ = 0;
  rebuild_offset();
  if (++basis_counter_ < basis_count_) {
    rebuild_rows();
    return;
  }
  load_block(block_i_ + 1);
}

void FlatEnumerator::seek(uint64_t index) {
  if (index >= total_) {
    index_ = total_;
    return;
  }
  index_ = index;
  auto it = std::upper_bound(
      blocks_.begin(), blocks_.end(), index,
      [](uint64_t v, const Block& b) { return v < b.start; });
  std::size_t bi = std::size_t(it - blocks_.begin()) - 1;
  load_block(bi);
  uint64_t rel = index - blocks_[bi].start;
  offset_counter_ = rel % offset_count_;
  basis_counter_ = rel / offset_count_;
  rebuild_rows();
  rebuild_offset();
}

Flat FlatEnumerator::current() const {
  return Flat(n_, k_, std::vector<uint32_t>(rows_.begin(), rows_.end()),
              offset_mask_);
}

// ---------------------------------------------------------------------------
// FlatPointEnumerator

FlatPointEnumerator::FlatPointEnumerator(int n, int k, uint32_t point,
                                         uint64_t budget)
    : n_(n), k_(k), point_(point) {
  check_nk(n, k);
  if (point >= (uint32_t(1) << n))
    throw std::invalid_argument("point out of range for n");
  BigInt total = count_subspaces(n, k);
  if (total > budget)
    throw BudgetError("enumerating " + total.str() +
                      " flats through a point exceeds budget of " +
                      std::to_string(budget));
  total_ = build_blocks(n, k, 1, blocks_);
  rows_.resize(k);
  load_block(0);
}

void FlatPointEnumerator::load_block(std::size_t bi) {
  block_i_ = bi;
  if (bi >= blocks_.size()) return;
  const Block& blk = blocks_[bi];
  pivot_pos_.clear();
  for (int i = 0; i < n_; ++i)
    if (blk.pivots >> i & 1) pivot_pos_.push_back(i);
  free_slots_.clear();
  for (int j = 0; j < k_; ++j)
    for (int i = 0; i < n_; ++i)
      if (!(blk.pivots >> i & 1) && i > pivot_pos_[j])
        free_slots_.emplace_back(j, i);
  basis_count_ = uint64_t(1) << blk.free_bits;
  basis_counter_ = 0;
  rebuild_rows();
}

void FlatPointEnumerator::rebuild_rows() {
  for (int j = 0; j < k_; ++j) rows_[j] = uint32_t(1) << pivot_pos_[j];
  for (std::size_t b = 0; b < free_slots_.size(); ++b)
    if (basis_counter_ >> b & 1)
      rows_[free_slots_[b].first] |= uint32_t(1) << free_slots_[b].second;
  // canonical offset of the flat through point_: clear the pivot bits
  uint32_t off = point_;
  for (int j = 0; j < k_; ++j)
    if (off >> pivot_pos_[j] & 1) off ^= rows_[j];
  offset_mask_ = off;
}

void FlatPointEnumerator::advance() {
  ++index_;
  if (done()) return;
  if (++basis_counter_ < basis_count_) {
    rebuild_rows();
    return;
  }
  load_block(block_i_ + 1);
}

Flat FlatPointEnumerator::current() const {
  return Flat(n_, k_, std::vector<uint32_t>(rows_.begin(), rows_.end()),
              offset_mask_);
}

// ---------------------------------------------------------------------------
// Restriction

void restrict_words(const TruthTable& tt, std::span<const uint32_t> rows,
                    uint32_t offset, int k, std::span<uint64_t> out) {
  for (auto& w : out) w = 0;
  const uint64_t* src = tt.words().data();
  uint32_t p = offset;
  uint32_t g = 0;
  if (src[p >> 6] >> (p & 63) & 1) out[0] |= 1;
  uint32_t points = uint32_t(1) << k;
  for (uint32_t i = 1; i < points; ++i) {
    int tz = std::countr_zero(i);
    p ^= rows[tz];              // Gray walk over the flat
    g ^= uint32_t(1) << tz;     // matching restricted coordinates
    if (src[p >> 6] >> (p & 63) & 1) out[g >> 6] |= uint64_t(1) << (g & 63);
  }
}

TruthTable restrict_to(const TruthTable& tt, std::span<const uint32_t> basis,
                       uint32_t offset) {
  int k = int(basis.size());
  if (k > tt.vars())
    throw std::invalid_argument("restriction dimension exceeds n");
  for (uint32_t row : basis)
    if (row == 0 || row >= tt.size())
      throw std::invalid_argument("basis mask out of range");
  rref_basis(tt.vars(), basis);  // validates independence
  if (offset >= tt.size())
    throw std::invalid_argument("offset out of range");
  TruthTable out(k);
  restrict_words(tt, basis, offset, k, out.words());
  return out;
}

TruthTable restrict_to(const TruthTable& tt, const Flat& flat) {
  if (flat.ambient() != tt.vars())
    throw std::invalid_argument("flat lives in a different dimension");
  TruthTable out(flat.dim());
  restrict_words(tt, flat.basis(), flat.offset(), flat.dim(), out.words());
  return out;
}

bool flat_parity(const TruthTable& tt, const Flat& flat) {
  if (flat.ambient() != tt.vars())
    throw std::invalid_argument("flat lives in a different dimension");
  if (flat.dim() < 1)
    throw std::invalid_argument("flat parity needs k >= 1");
  const uint64_t* src = tt.words().data();
  uint32_t p = flat.offset();
  bool acc = src[p >> 6] >> (p & 63) & 1;
  uint32_t points = uint32_t(1) << flat.dim();
  auto rows = flat.basis();
  for (uint32_t i = 1; i < points; ++i) {
    p ^= rows[std::countr_zero(i)];
    acc ^= src[p >> 6] >> (p & 63) & 1;
  }
  return acc;
}

}  // namespace flatdeg
