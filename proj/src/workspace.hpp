#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace mabbob::detail {

// Bump allocator for per-call temporaries. Small requests stay on the stack
// so evaluation does not touch the heap in low dimension.
class Workspace {
 public:
  explicit Workspace(std::size_t capacity) : capacity_(capacity) {
    if (capacity > inline_.size()) {
      heap_.resize(capacity);
      base_ = heap_.data();
    } else {
      base_ = inline_.data();
    }
  }

  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  std::span<double> take(std::size_t n) {
    std::span<double> out(base_ + used_, n);
    used_ += n;
    return out;
  }

  [[nodiscard]] std::size_t remaining() const noexcept { return capacity_ - used_; }

 private:
  std::array<double, 512> inline_;
  std::vector<double> heap_;
  double* base_ = nullptr;
  std::size_t capacity_ = 0;
  std::size_t used_ = 0;
};

}  // namespace mabbob::detail
