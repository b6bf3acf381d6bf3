#ifndef FSING_REPORT_HPP
#define FSING_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace fsing {

/// Outcome of a verification sweep: pass flag, number of comparisons made,
/// and witnesses for the first few mismatches.
struct VerifyReport {
  bool pass = true;
  uint64_t checks = 0;
  std::vector<std::string> witnesses;

  static constexpr size_t kMaxWitnesses = 8;

  void fail(std::string witness) {
    pass = false;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(witness));
  }

  void merge(const VerifyReport& o) {
    checks += o.checks;
    if (!o.pass) {
      pass = false;
      for (const auto& w : o.witnesses) {
        if (witnesses.size() < kMaxWitnesses) witnesses.push_back(w);
      }
    }
  }
};

}  // namespace fsing

#endif  // FSING_REPORT_HPP
