#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace dynpred::detail {

/// Array-backed binary max-heap over a fixed key universe [0, n) with an
/// index-to-position map, so any key's value can be raised or lowered.
class AddressableMaxHeap {
 public:
  AddressableMaxHeap() = default;

  explicit AddressableMaxHeap(const std::vector<std::int64_t>& values) {
    build(values);
  }

  void build(const std::vector<std::int64_t>& values) {
    const std::size_t n = values.size();
    heap_.resize(n);
    pos_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      heap_[k] = {values[k], k};
      pos_[k] = k;
    }
    for (std::size_t i = n / 2; i-- > 0;) sift_down(i);
  }

  [[nodiscard]] std::size_t size() const { return heap_.size(); }
  [[nodiscard]] bool empty() const { return heap_.empty(); }

  /// (value, key) of the maximum.
  [[nodiscard]] std::pair<std::int64_t, std::size_t> top() const {
    return {heap_[0].value, heap_[0].key};
  }

  [[nodiscard]] std::int64_t value_of(std::size_t key) const {
    return heap_[pos_[key]].value;
  }

  void update_key(std::size_t key, std::int64_t value) {
    const std::size_t i = pos_[key];
    const std::int64_t old = heap_[i].value;
    heap_[i].value = value;
    if (value > old)
      sift_up(i);
    else if (value < old)
      sift_down(i);
  }

 private:
  struct Entry {
    std::int64_t value;
    std::size_t key;
  };

  void swap_at(std::size_t a, std::size_t b) {
    std::swap(heap_[a], heap_[b]);
    pos_[heap_[a].key] = a;
    pos_[heap_[b].key] = b;
  }

  void sift_up(std::size_t i) {
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (heap_[parent].value >= heap_[i].value) break;
      swap_at(parent, i);
      i = parent;
    }
  }

  void sift_down(std::size_t i) {
    const std::size_t n = heap_.size();
    while (true) {
      std::size_t largest = i;
      const std::size_t l = 2 * i + 1, r = 2 * i + 2;
      if (l < n && heap_[l].value > heap_[largest].value) largest = l;
      if (r < n && heap_[r].value > heap_[largest].value) largest = r;
      if (largest == i) break;
      swap_at(i, largest);
      i = largest;
    }
  }

  std::vector<Entry> heap_;
  std::vector<std::size_t> pos_;
};

}  // namespace dynpred::detail
