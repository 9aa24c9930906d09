#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>

#include "golayfuzz/assignment.hpp"
#include "golayfuzz/error.hpp"

namespace golayfuzz {

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// An exact non-negative fraction with a nonzero denominator.
class Ratio {
 public:
  Ratio(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {}

  std::uint64_t numerator() const { return num_; }
  std::uint64_t denominator() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Fixed-point decimal, rounded half-to-even on the exact value.
  std::string format(int decimals = 6) const {
    unsigned __int128 scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    const unsigned __int128 scaled = static_cast<unsigned __int128>(num_) * scale;
    unsigned __int128 q = scaled / den_;
    const unsigned __int128 r = scaled % den_;
    const unsigned __int128 twice = 2 * r;
    if (twice > den_ || (twice == den_ && (q & 1) != 0)) ++q;

    auto to_string = [](unsigned __int128 v) {
      std::string s;
      do {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
      } while (v != 0);
      return s;
    };
    std::string whole = to_string(q / scale);
    if (decimals == 0) return whole;
    std::string frac = to_string(q % scale);
    frac.insert(frac.begin(), static_cast<std::size_t>(decimals) - frac.size(), '0');
    return whole + "." + frac;
  }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return static_cast<unsigned __int128>(a.num_) * b.den_ == static_cast<unsigned __int128>(b.num_) * a.den_;
  }

 private:
  std::uint64_t num_;
  std::uint64_t den_;
};

/// TPR, SPC, PPV, ACC. A metric is empty exactly when its denominator is 0.
struct Metrics {
  std::optional<Ratio> tpr;
  std::optional<Ratio> spc;
  std::optional<Ratio> ppv;
  std::optional<Ratio> acc;
};

inline Metrics metrics(const ConfusionCounts& c) {
  if (c.total() == 0) throw ValidationError("metrics undefined for an empty confusion matrix");
  auto ratio = [](std::uint64_t num, std::uint64_t den) -> std::optional<Ratio> {
    if (den == 0) return std::nullopt;
    return Ratio(num, den);
  };
  return {ratio(c.tp, c.tp + c.fn), ratio(c.tn, c.tn + c.fp), ratio(c.tp, c.tp + c.fp), ratio(c.tp + c.tn, c.total())};
}

inline std::string format_metric(const std::optional<Ratio>& r) { return r ? r->format(6) : "null"; }

inline ConfusionCounts confusion(std::span<const ClusterAssignment> assignments,
                                 const std::unordered_map<std::string, bool>& truth, Label positive = Label::kLabel1) {
  ConfusionCounts c;
  for (const auto& a : assignments) {
    auto it = truth.find(a.id);
    if (it == truth.end()) throw ValidationError("record '" + a.id + "' has no ground-truth value");
    const bool predicted = a.label == positive;
    if (predicted) {
      (it->second ? c.tp : c.fp)++;
    } else {
      (it->second ? c.fn : c.tn)++;
    }
  }
  return c;
}

/// `{"TP":..,"FP":..,"TN":..,"FN":..,"TPR":..,"SPC":..,"PPV":..,"ACC":..}`,
/// ratios at six decimals, null when undefined.
inline std::string metrics_json(const ConfusionCounts& c) {
  const Metrics m = metrics(c);
  return "{\"TP\":" + std::to_string(c.tp) + ",\"FP\":" + std::to_string(c.fp) + ",\"TN\":" + std::to_string(c.tn) +
         ",\"FN\":" + std::to_string(c.fn) + ",\"TPR\":" + format_metric(m.tpr) + ",\"SPC\":" +
         format_metric(m.spc) + ",\"PPV\":" + format_metric(m.ppv) + ",\"ACC\":" + format_metric(m.acc) + "}";
}

/// Truth cell -> boolean. Accepts 1/0, true/false, yes/no, y/n, t/f (any case).
inline bool parse_truth(std::string_view text) {
  std::string v;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') v.push_back(static_cast<char>(ch >= 'A' && ch <= 'Z' ? ch - 'A' + 'a' : ch));
  }
  if (v == "1" || v == "true" || v == "yes" || v == "y" || v == "t") return true;
  if (v == "0" || v == "false" || v == "no" || v == "n" || v == "f") return false;
  throw ValidationError("cannot read truth value '" + std::string(text) + "'");
}

}  // namespace golayfuzz
