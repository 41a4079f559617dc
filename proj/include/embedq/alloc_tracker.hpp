#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <new>

// Heap accounting. Counters are always available; they only move in a binary
// that expands EMBEDQ_INSTALL_ALLOCATION_TRACKER() once at namespace scope,
// which replaces the global operator new/delete family with counting
// versions.

namespace embedq::alloc {

struct Counters {
  std::atomic<std::size_t> current{0};
  std::atomic<std::size_t> peak{0};
  std::atomic<std::size_t> largest{0};  // largest single request since reset
  std::atomic<bool> installed{false};
};

inline Counters& counters() {
  static Counters c;
  return c;
}

inline void note_alloc(std::size_t bytes) noexcept {
  auto& c = counters();
  const std::size_t now = c.current.fetch_add(bytes, std::memory_order_relaxed) + bytes;
  std::size_t peak = c.peak.load(std::memory_order_relaxed);
  while (now > peak && !c.peak.compare_exchange_weak(peak, now, std::memory_order_relaxed)) {
  }
  std::size_t big = c.largest.load(std::memory_order_relaxed);
  while (bytes > big && !c.largest.compare_exchange_weak(big, bytes, std::memory_order_relaxed)) {
  }
}

inline void note_free(std::size_t bytes) noexcept {
  counters().current.fetch_sub(bytes, std::memory_order_relaxed);
}

inline bool installed() noexcept { return counters().installed.load(); }
inline std::size_t current_bytes() noexcept { return counters().current.load(); }

/// Measures heap growth over a scope: peak bytes above the level at
/// construction, and the largest single allocation made meanwhile.
class Scope {
 public:
  Scope() : base_(current_bytes()) {
    counters().peak.store(base_);
    counters().largest.store(0);
  }
  std::size_t peak_bytes() const noexcept {
    const auto p = counters().peak.load();
    return p > base_ ? p - base_ : 0;
  }
  std::size_t largest_allocation() const noexcept { return counters().largest.load(); }

 private:
  std::size_t base_;
};

namespace detail {

// Every block carries a header holding the requested size; the header is as
// large as the block's alignment so the user pointer keeps that alignment.
inline void* tracked_alloc(std::size_t bytes, std::size_t align) noexcept {
  const std::size_t header = align < alignof(std::max_align_t) ? alignof(std::max_align_t) : align;
  void* raw = nullptr;
  if (align <= alignof(std::max_align_t)) {
    raw = std::malloc(bytes + header);
  } else {
    const std::size_t total = (bytes + header + align - 1) / align * align;
    raw = std::aligned_alloc(align, total);
  }
  if (!raw) return nullptr;
  auto* base = static_cast<unsigned char*>(raw);
  *reinterpret_cast<std::size_t*>(base + header - sizeof(std::size_t)) = bytes;
  note_alloc(bytes);
  return base + header;
}

inline void tracked_free(void* ptr, std::size_t align) noexcept {
  if (!ptr) return;
  const std::size_t header = align < alignof(std::max_align_t) ? alignof(std::max_align_t) : align;
  auto* user = static_cast<unsigned char*>(ptr);
  note_free(*reinterpret_cast<std::size_t*>(user - sizeof(std::size_t)));
  std::free(user - header);
}

inline void* tracked_new(std::size_t bytes, std::size_t align) {
  if (bytes == 0) bytes = 1;
  for (;;) {
    if (void* p = tracked_alloc(bytes, align)) return p;
    if (auto handler = std::get_new_handler())
      handler();
    else
      throw std::bad_alloc();
  }
}

}  // namespace detail
}  // namespace embedq::alloc

#define EMBEDQ_INSTALL_ALLOCATION_TRACKER()                                                              \
  namespace {                                                                                            \
  [[maybe_unused]] const bool embedq_tracker_flag_ = (::embedq::alloc::counters().installed = true);    \
  }                                                                                                      \
  void* operator new(std::size_t n) { return ::embedq::alloc::detail::tracked_new(n, 0); }              \
  void* operator new[](std::size_t n) { return ::embedq::alloc::detail::tracked_new(n, 0); }            \
  void* operator new(std::size_t n, std::align_val_t a) {                                               \
    return ::embedq::alloc::detail::tracked_new(n, static_cast<std::size_t>(a));                        \
  }                                                                                                      \
  void* operator new[](std::size_t n, std::align_val_t a) {                                             \
    return ::embedq::alloc::detail::tracked_new(n, static_cast<std::size_t>(a));                        \
  }                                                                                                      \
  void* operator new(std::size_t n, const std::nothrow_t&) noexcept {                                   \
    return ::embedq::alloc::detail::tracked_alloc(n ? n : 1, 0);                                        \
  }                                                                                                      \
  void* operator new[](std::size_t n, const std::nothrow_t&) noexcept {                                 \
    return ::embedq::alloc::detail::tracked_alloc(n ? n : 1, 0);                                        \
  }                                                                                                      \
  void operator delete(void* p) noexcept { ::embedq::alloc::detail::tracked_free(p, 0); }               \
  void operator delete[](void* p) noexcept { ::embedq::alloc::detail::tracked_free(p, 0); }             \
  void operator delete(void* p, std::size_t) noexcept { ::embedq::alloc::detail::tracked_free(p, 0); }  \
  void operator delete[](void* p, std::size_t) noexcept { ::embedq::alloc::detail::tracked_free(p, 0); }\
  void operator delete(void* p, std::align_val_t a) noexcept {                                          \
    ::embedq::alloc::detail::tracked_free(p, static_cast<std::size_t>(a));                              \
  }                                                                                                      \
  void operator delete[](void* p, std::align_val_t a) noexcept {                                        \
    ::embedq::alloc::detail::tracked_free(p, static_cast<std::size_t>(a));                              \
  }                                                                                                      \
  void operator delete(void* p, std::size_t, std::align_val_t a) noexcept {                             \
    ::embedq::alloc::detail::tracked_free(p, static_cast<std::size_t>(a));                              \
  }                                                                                                      \
  void operator delete[](void* p, std::size_t, std::align_val_t a) noexcept {                           \
    ::embedq::alloc::detail::tracked_free(p, static_cast<std::size_t>(a));                              \
  }                                                                                                      \
  void operator delete(void* p, const std::nothrow_t&) noexcept { ::embedq::alloc::detail::tracked_free(p, 0); } \
  void operator delete[](void* p, const std::nothrow_t&) noexcept { ::embedq::alloc::detail::tracked_free(p, 0); }
