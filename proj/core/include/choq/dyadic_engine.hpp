#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "choq/content.hpp"
#include "choq/geometry.hpp"

namespace choq {

/// Incremental optimal-dyadic-cover cost over the level-L tree. Adding a cell
/// updates the O(L) ancestors; child sums are recomputed in index order on
/// every update, so the final value matches the batch solver's double path
/// operation for operation. This is the hot path behind restricted Choquet
/// integrals: one pass over cells in decreasing value order yields the whole
/// distribution function.
class DyadicEngine {
 public:
  DyadicEngine() = default;
  DyadicEngine(int n, int L, double delta) { reset_shape(n, L, delta); }

  void reset_shape(int n, int L, double delta) {
    check_dim_level(n, L);
    n_ = n;
    L_ = L;
    combos_ = 1 << n;
    DeltaBasis basis = DeltaBasis::make(delta, L);
    cube_ = basis.b;
    val_.assign(static_cast<std::size_t>(L) + 1, {});
    off_.assign(static_cast<std::size_t>(L) + 1, {});
    for (int l = 0; l <= L; ++l) {
      val_[static_cast<std::size_t>(l)].assign(static_cast<std::size_t>(std::int64_t{1} << (n * l)), 0.0);
      for (int c = 0; c < combos_; ++c) {
        std::int64_t o = 0;
        for (int i = 0; i < n; ++i)
          o |= static_cast<std::int64_t>((c >> i) & 1) << (l * (n - 1 - i));
        off_[static_cast<std::size_t>(l)][static_cast<std::size_t>(c)] = o;
      }
    }
    added_.clear();
  }

  void add_cell(std::int64_t flat) {
    auto& leaves = val_[static_cast<std::size_t>(L_)];
    if (leaves[static_cast<std::size_t>(flat)] != 0.0) return;
    leaves[static_cast<std::size_t>(flat)] = cube_[static_cast<std::size_t>(L_)];
    added_.push_back(flat);
    std::array<std::int64_t, kMaxDim> a{};
    std::int64_t mask = (std::int64_t{1} << L_) - 1;
    for (int i = 0; i < n_; ++i) a[static_cast<std::size_t>(i)] = (flat >> (L_ * (n_ - 1 - i))) & mask;
    for (int l = L_ - 1; l >= 0; --l) {
      int cl = l + 1;
      std::int64_t node = 0, base = 0;
      for (int i = 0; i < n_; ++i) {
        a[static_cast<std::size_t>(i)] >>= 1;
        node |= a[static_cast<std::size_t>(i)] << (l * (n_ - 1 - i));
        base |= (a[static_cast<std::size_t>(i)] << 1) << (cl * (n_ - 1 - i));
      }
      const auto& child = val_[static_cast<std::size_t>(cl)];
      double sum = 0;
      for (int c = 0; c < combos_; ++c)
        sum += child[static_cast<std::size_t>(base + off_[static_cast<std::size_t>(cl)][static_cast<std::size_t>(c)])];
      double own = cube_[static_cast<std::size_t>(l)];
      val_[static_cast<std::size_t>(l)][static_cast<std::size_t>(node)] = own <= sum ? own : sum;
    }
  }

  double value() const { return val_[0][0]; }

  void clear() {
    std::int64_t mask = (std::int64_t{1} << L_) - 1;
    for (std::int64_t flat : added_) {
      val_[static_cast<std::size_t>(L_)][static_cast<std::size_t>(flat)] = 0.0;
      std::array<std::int64_t, kMaxDim> a{};
      for (int i = 0; i < n_; ++i) a[static_cast<std::size_t>(i)] = (flat >> (L_ * (n_ - 1 - i))) & mask;
      for (int l = L_ - 1; l >= 0; --l) {
        std::int64_t node = 0;
        for (int i = 0; i < n_; ++i) {
          a[static_cast<std::size_t>(i)] >>= 1;
          node |= a[static_cast<std::size_t>(i)] << (l * (n_ - 1 - i));
        }
        val_[static_cast<std::size_t>(l)][static_cast<std::size_t>(node)] = 0.0;
      }
    }
    added_.clear();
  }

 private:
  int n_ = 1, L_ = 0, combos_ = 2;
  std::array<double, kMaxLevelStore + 1> cube_{};
  std::vector<std::vector<double>> val_;
  std::vector<std::array<std::int64_t, 8>> off_;
  std::vector<std::int64_t> added_;
};

}  // namespace choq
