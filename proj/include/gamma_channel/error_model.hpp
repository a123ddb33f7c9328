#pragma once

#include <cctype>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "combinatorics.hpp"
#include "core.hpp"
#include "rank_distribution.hpp"

namespace gamma_channel {

/// Parsed error-model description such as "constant:t=2" or "empirical:0.5,0.5".
struct ErrorModelSpec {
  enum class Kind { constant, iid_vectors, binomial_packets, empirical };
  Kind kind = Kind::constant;
  int t = 0;
  Rational p = 0;
  std::vector<Rational> values;
};

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline int parse_count(const std::string& s, const std::string& what) {
  if (s.empty() || s.size() > 9) throw InputError("invalid integer for " + what + ": '" + s + "'");
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw InputError("invalid integer for " + what + ": '" + s + "'");
  return std::stoi(s);
}

}  // namespace detail

/// Exact value of a decimal ("0.125", "1e-3") or fraction ("1/3") literal.
inline Rational parse_rational(const std::string& text) {
  const auto fail = [&]() -> Rational { throw InputError("invalid number: '" + text + "'"); };
  if (text.empty()) return fail();
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) return fail();
    return num / den;
  }
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  BigCount digits = 0;
  long long scale = 0;
  bool any = false;
  bool dot = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits = digits * 10 + (ch - '0');
      if (dot) ++scale;
      any = true;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) return fail();
  long long exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') return fail();
    std::string rest = text.substr(i + 1);
    bool exp_neg = false;
    if (!rest.empty() && (rest[0] == '+' || rest[0] == '-')) {
      exp_neg = rest[0] == '-';
      rest = rest.substr(1);
    }
    if (rest.empty() || rest.size() > 4) return fail();
    for (char ch : rest)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return fail();
    exponent = std::stoll(rest) * (exp_neg ? -1 : 1);
  }
  exponent -= scale;
  Rational value(digits);
  if (exponent > 0) value *= Rational(ipow(10, exponent));
  if (exponent < 0) value /= Rational(ipow(10, -exponent));
  return negative ? Rational(-value) : value;
}

/// Parses kind(:key=value(,key=value)*) with kinds constant, iid, binomial and empirical.
inline ErrorModelSpec parse_error_model(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string body = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  ErrorModelSpec spec;

  if (kind == "empirical") {
    spec.kind = ErrorModelSpec::Kind::empirical;
    if (body.empty()) throw InputError("empirical error model needs a probability list");
    for (const auto& item : detail::split(body, ',')) spec.values.push_back(parse_rational(item));
    return spec;
  }

  std::map<std::string, std::string> kv;
  if (!body.empty()) {
    for (const auto& item : detail::split(body, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw InputError("expected key=value in error model, got '" + item + "'");
      const std::string key = item.substr(0, eq);
      if (kv.count(key)) throw InputError("duplicate key '" + key + "' in error model");
      kv[key] = item.substr(eq + 1);
    }
  }
  const auto require_keys = [&](const std::set<std::string>& keys) {
    for (const auto& [key, value] : kv)
      if (!keys.count(key)) throw InputError("unknown key '" + key + "' for error model '" + kind + "'");
    for (const auto& key : keys)
      if (!kv.count(key)) throw InputError("missing key '" + key + "' for error model '" + kind + "'");
  };

  if (kind == "constant") {
    require_keys({"t"});
    spec.kind = ErrorModelSpec::Kind::constant;
    spec.t = detail::parse_count(kv["t"], "t");
  } else if (kind == "iid" || kind == "iid-vectors") {
    require_keys({"t"});
    spec.kind = ErrorModelSpec::Kind::iid_vectors;
    spec.t = detail::parse_count(kv["t"], "t");
  } else if (kind == "binomial" || kind == "binomial-packets") {
    require_keys({"T", "p"});
    spec.kind = ErrorModelSpec::Kind::binomial_packets;
    spec.t = detail::parse_count(kv["T"], "T");
    spec.p = parse_rational(kv["p"]);
  } else {
    throw InputError("unknown error model kind '" + kind + "'");
  }
  return spec;
}

/// Rank law of the span of t independent uniform vectors of F_q^m.
inline std::vector<Rational> iid_vectors_law(int t, int m, const FieldOrder& q) {
  check_dim(t, "t");
  check_dim(m, "m");
  std::vector<Rational> out;
  const BigCount total = ipow(q.value(), static_cast<long long>(m) * t);
  for (int r = 0; r <= std::min(m, t); ++r) {
    // t-tuples spanning a fixed r-dimensional space: prod_{i<r} (q^t - q^i).
    const BigCount spanning = detail::falling_qproduct(t, r, q.value());
    out.emplace_back(detail::qbinom_raw(m, r, q.value()) * spanning, total);
  }
  return out;
}

/// Error rank distribution of length min(n, m) + 1 for the given model.
inline RankDistribution build_error_model(const ErrorModelSpec& spec, const FieldOrder& q, int n, int m) {
  check_dim(n, "n");
  check_dim(m, "m");
  const int k = std::min(n, m);
  std::vector<Rational> probs(static_cast<std::size_t>(k) + 1, Rational(0));
  switch (spec.kind) {
    case ErrorModelSpec::Kind::constant:
      if (spec.t > k) throw InputError("constant error rank t exceeds min(n, m)");
      probs[static_cast<std::size_t>(spec.t)] = 1;
      return RankDistribution::exact(std::move(probs));
    case ErrorModelSpec::Kind::iid_vectors: {
      if (spec.t > n) throw InputError("iid error model needs t <= n (B has n rows)");
      const auto law = iid_vectors_law(spec.t, m, q);
      for (std::size_t r = 0; r < law.size(); ++r) probs[r] = law[r];
      return RankDistribution::exact(std::move(probs));
    }
    case ErrorModelSpec::Kind::binomial_packets: {
      if (spec.t > n) throw InputError("binomial error model needs T <= n (B has n rows)");
      if (spec.p < 0 || spec.p > 1) throw InputError("binomial error model needs p in [0, 1]");
      for (int t = 0; t <= spec.t; ++t) {
        Rational weight = 1;
        for (int i = 0; i < t; ++i) weight *= spec.p;
        for (int i = 0; i < spec.t - t; ++i) weight *= 1 - spec.p;
        // Binomial coefficient C(T, t).
        BigCount choose = 1;
        for (int i = 0; i < t; ++i) choose = choose * (spec.t - i) / (i + 1);
        weight *= Rational(choose);
        if (weight == 0) continue;
        const auto law = iid_vectors_law(t, m, q);
        for (std::size_t r = 0; r < law.size(); ++r) probs[r] += weight * law[r];
      }
      return RankDistribution::exact(std::move(probs));
    }
    case ErrorModelSpec::Kind::empirical: {
      if (spec.values.size() > probs.size())
        throw InputError("empirical error model has more than min(n, m) + 1 entries");
      Rational sum = 0;
      for (std::size_t r = 0; r < spec.values.size(); ++r) {
        if (spec.values[r] < 0) throw InputError("empirical error model has a negative entry");
        probs[r] = spec.values[r];
        sum += spec.values[r];
      }
      if (sum == 1) return RankDistribution::exact(std::move(probs));
      std::vector<double> f;
      for (const auto& x : probs) f.push_back(to_double(x));
      return RankDistribution::floating(std::move(f));
    }
  }
  throw std::logic_error("unhandled error model kind");
}

inline RankDistribution build_error_model(const std::string& text, const FieldOrder& q, int n, int m) {
  return build_error_model(parse_error_model(text), q, n, m);
}

}  // namespace gamma_channel
