#pragma once

#include <cmath>
#include <cstdint>

namespace rosen {

// Counter-based uniform stream. Every variate is a pure function of
// (key, counter), so replicates can be generated in any order, on any number
// of threads, with identical results. Mixing is the splitmix64 finalizer
// applied to key ^ Weyl(counter).
namespace detail {
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

inline uint64_t hash_combine(uint64_t a, uint64_t b) {
  return detail::mix64(a ^ (detail::mix64(b) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

double normal_icdf(double p);  // Wichura's PPND16, |err| < 1e-15 on (0,1)

class CounterStream {
 public:
  CounterStream() : key_(0) {}
  CounterStream(uint64_t seed, uint64_t domain, uint64_t instance = 0)
      : key_(hash_combine(hash_combine(seed, domain), instance)) {}

  CounterStream sub(uint64_t instance) const {
    CounterStream s;
    s.key_ = hash_combine(key_, instance);
    return s;
  }

  uint64_t bits(uint64_t ctr) const { return detail::mix64(key_ ^ (ctr * 0xd1342543de82ef95ULL)); }

  // uniform on (0,1), never returns an exact endpoint
  double uniform(uint64_t ctr) const {
    return (static_cast<double>(bits(ctr) >> 11) + 0.5) * 0x1.0p-53;
  }
  double normal(uint64_t ctr) const { return normal_icdf(uniform(ctr)); }
  double exponential(uint64_t ctr, double rate) const {
    return -std::log(uniform(ctr)) / rate;
  }
  // +1 or -1 with equal probability
  int sign(uint64_t ctr) const { return (bits(ctr) & 1u) ? 1 : -1; }

  uint64_t key() const { return key_; }

 private:
  uint64_t key_;
};

// Sequential facade over a counter stream for naturally ordered draws
// (e.g. the gap sequence of one transport path).
class SeqStream {
 public:
  explicit SeqStream(CounterStream s, uint64_t start = 0) : s_(s), ctr_(start) {}
  double uniform() { return s_.uniform(ctr_++); }
  double normal() { return s_.normal(ctr_++); }
  double exponential(double rate) { return s_.exponential(ctr_++, rate); }
  int sign() { return s_.sign(ctr_++); }
  uint64_t consumed() const { return ctr_; }

 private:
  CounterStream s_;
  uint64_t ctr_;
};

// standard normal cdf
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

}  // namespace rosen
