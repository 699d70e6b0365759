#include "approxlab/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace approxlab {

Rat make_rat(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q{Int(static_cast<long>(num)), Int(static_cast<long>(den))};
  q.canonicalize();
  return q;
}

std::optional<Rat> parse_rat(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      Int num(text.substr(0, slash));
      Int den(text.substr(slash + 1));
      if (den == 0) return std::nullopt;
      Rat q{num, den};
      q.canonicalize();
      return q;
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      size_t frac_len = text.size() - dot - 1;
      if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
      Int num(digits);
      Int den = 1;
      for (size_t i = 0; i < frac_len; ++i) den *= 10;
      Rat q{num, den};
      q.canonicalize();
      return q;
    }
    Rat q{Int(text)};
    return q;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

Rat rat_pow(const Rat& x, unsigned long e) {
  if (e == 0) return Rat(1);
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

Rat geom_sum(const Rat& l, unsigned long n) {
  Rat sum(0), term(1);
  for (unsigned long i = 0; i < n; ++i) {
    sum += term;
    term *= l;
  }
  return sum;
}

Rat dyadic_floor(const Rat& x, unsigned bits) {
  // floor(x * 2^bits) / 2^bits, computed in integers.
  Int scaled_num = x.get_num() << bits;
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), x.get_den().get_mpz_t());
  Rat r(q, Int(1) << bits);
  r.canonicalize();
  return r;
}

Rat dyadic_floor_pow2(long long p, long long q, unsigned bits) {
  if (p < 0 || q < 1) throw std::invalid_argument("dyadic_floor_pow2 expects p >= 0, q >= 1");
  if (p % q == 0) {
    long long e = p / q;
    if (e <= static_cast<long long>(bits)) {
      // 2^-e is itself a multiple of 2^-bits.
      Rat r(Int(1), Int(1) << e);
      r.canonicalize();
      return r;
    }
  }
  // floor(2^(bits - p/q)) / 2^bits = floor((2^(bits*q - p))^(1/q)) / 2^bits.
  long long e = static_cast<long long>(bits) * q - p;
  if (e < 0) return Rat(0);  // value below the approximation grid
  Int big = Int(1) << static_cast<unsigned long>(e);
  Int root;
  mpz_root(root.get_mpz_t(), big.get_mpz_t(), static_cast<unsigned long>(q));
  Rat r(root, Int(1) << bits);
  r.canonicalize();
  return r;
}

double to_double(const Rat& x) { return x.get_d(); }

namespace {

json int_component_to_json(const Int& v) {
  if (v.fits_slong_p()) return json(static_cast<long long>(v.get_si()));
  return json(v.get_str());
}

std::optional<Int> int_component_from_json(const json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

json rat_to_json(const Rat& x) {
  json j;
  j["num"] = int_component_to_json(x.get_num());
  j["den"] = int_component_to_json(x.get_den());
  return j;
}

std::optional<Rat> rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(Int(static_cast<long>(j.get<long long>())));
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) return std::nullopt;
  auto num = int_component_from_json(j.at("num"));
  auto den = int_component_from_json(j.at("den"));
  if (!num || !den || *den == 0) return std::nullopt;
  Rat q{*num, *den};
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace approxlab
