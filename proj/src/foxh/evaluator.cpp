#include <bit>

#include "fracdiff/foxh.hpp"

namespace fracdiff::foxh {

Evaluator::Key Evaluator::make_key(const FoxHSpec& spec, double z) {
  Key key;
  key.reserve(5 + 2 * (spec.upper().size() + spec.lower().size()));
  key.push_back(static_cast<std::uint64_t>(spec.m()));
  key.push_back(static_cast<std::uint64_t>(spec.n()));
  key.push_back(static_cast<std::uint64_t>(spec.p()));
  key.push_back(static_cast<std::uint64_t>(spec.q()));
  for (const auto& a : spec.upper()) {
    key.push_back(std::bit_cast<std::uint64_t>(a.shift));
    key.push_back(std::bit_cast<std::uint64_t>(a.scale));
  }
  for (const auto& b : spec.lower()) {
    key.push_back(std::bit_cast<std::uint64_t>(b.shift));
    key.push_back(std::bit_cast<std::uint64_t>(b.scale));
  }
  key.push_back(std::bit_cast<std::uint64_t>(z));
  return key;
}

FoxHValue Evaluator::operator()(const FoxHSpec& spec, double z) {
  Key key = make_key(spec, z);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  // Evaluate outside the lock; a racing duplicate computes the same value.
  const FoxHValue v = eval(spec, z);
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(std::move(key), v);
  return v;
}

std::size_t Evaluator::cache_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.size();
}

void Evaluator::clear() {
  std::lock_guard<std::mutex> lock(mu_);
  cache_.clear();
}

}  // namespace fracdiff::foxh
