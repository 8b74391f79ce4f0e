#pragma once

#include <compare>
#include <ostream>
#include <stdexcept>

namespace qk {

// A value of T extended by +infinity. Used for orders of vanishing (the zero
// function has order +inf) and for dynamic-programming bounds where an empty
// minimum means "forced to vanish".
template <class T>
class Extended {
 public:
  Extended() : inf_(false), v_() {}
  Extended(T v) : inf_(false), v_(std::move(v)) {}  // NOLINT: implicit by design
  static Extended infinity() {
    Extended e;
    e.inf_ = true;
    return e;
  }

  bool is_infinite() const { return inf_; }
  const T& finite() const {
    if (inf_) throw std::domain_error("Extended: value is +infinity");
    return v_;
  }

  friend Extended operator+(const Extended& a, const Extended& b) {
    if (a.inf_ || b.inf_) return infinity();
    return Extended(a.v_ + b.v_);
  }
  friend Extended operator-(const Extended& a, const T& b) {
    if (a.inf_) return infinity();
    return Extended(a.v_ - b);
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
    return a.v_ == b.v_;
  }
  friend bool operator<(const Extended& a, const Extended& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Extended& a, const Extended& b) { return a < b || a == b; }
  friend bool operator>(const Extended& a, const Extended& b) { return b < a; }
  friend bool operator>=(const Extended& a, const Extended& b) { return b <= a; }

  friend Extended min(const Extended& a, const Extended& b) { return a < b ? a : b; }
  friend Extended max(const Extended& a, const Extended& b) { return a < b ? b : a; }

  friend std::ostream& operator<<(std::ostream& os, const Extended& e) {
    if (e.inf_) return os << "inf";
    return os << e.v_;
  }

 private:
  bool inf_;
  T v_;
};

using Order = Extended<long long>;

}  // namespace qk
