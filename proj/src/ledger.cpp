#include "seqode/ledger.hpp"

#include <cstring>
#include <numeric>

namespace seqode {

namespace {

void fnv_mix(std::uint64_t& h, std::uint64_t word) {
  for (int byte = 0; byte < 8; ++byte) {
    h ^= (word >> (8 * byte)) & 0xffU;
    h *= 0x100000001b3ULL;
  }
}

std::uint64_t bits_of(double x) {
  std::uint64_t out;
  std::memcpy(&out, &x, sizeof out);
  return out;
}

}  // namespace

CostLedger::CostLedger(PowerCost cost, bool record_trace, Index trace_limit)
    : cost_(cost), record_trace_(record_trace), trace_limit_(trace_limit) {
  require(cost.beta >= 0.0, "cost: beta must be nonnegative");
}

void CostLedger::begin_step(Index arg_dim) {
  evaluations_.push_back(0);
  arg_dims_.push_back(arg_dim);
}

void CostLedger::add_evaluations(double first_coordinate, Index count) {
  require(!evaluations_.empty(), "ledger: evaluation recorded outside a step");
  evaluations_.back() += count;
  ++information_points_;
  if (!record_trace_) return;
  fnv_mix(digest_, bits_of(first_coordinate));
  if (static_cast<Index>(trace_.size()) < trace_limit_) {
    trace_.push_back({first_coordinate, count});
  } else {
    trace_truncated_ = true;
  }
}

void CostLedger::mix_values(std::span<const double> values) {
  if (!record_trace_) return;
  for (double v : values) fnv_mix(digest_, bits_of(v));
}

Index CostLedger::scalar_evaluations() const {
  return std::accumulate(evaluations_.begin(), evaluations_.end(), Index{0});
}

double CostLedger::total() const {
  double sum = 0.0;
  for (std::size_t k = 0; k < evaluations_.size(); ++k) {
    sum += cost_(static_cast<double>(arg_dims_[k])) * static_cast<double>(evaluations_[k]);
  }
  return sum;
}

Index CostLedger::trace_length() const {
  Index out = 0;
  for (const auto& point : trace_) out += point.evaluations;
  return out;
}

}  // namespace seqode
