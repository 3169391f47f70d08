#include "causaldt/probability.hpp"

#include <cctype>
#include <stdexcept>

#include "causaldt/error.hpp"

namespace causaldt {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_literal(std::string_view text) {
  throw InputError("not a probability literal: \"" + std::string(text) + "\"");
}

mpq_class parse_decimal(std::string_view text) {
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }

  long exponent = 0;
  if (const auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = rest.substr(e + 1);
    rest = rest.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) bad_literal(text);
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }

  std::string digits;
  if (const auto dot = rest.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = rest.substr(0, dot);
    const std::string_view frac = rest.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      bad_literal(text);
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(rest)) bad_literal(text);
    digits = std::string(rest);
  }
  if (digits.empty()) digits = "0";

  mpz_class numerator(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  mpq_class value = exponent < 0 ? mpq_class(numerator, scale) : mpq_class(numerator * scale);
  value.canonicalize();
  return negative ? mpq_class(-value) : value;
}

}  // namespace

Probability::Probability(long numerator, unsigned long denominator) {
  if (denominator == 0) throw InputError("probability with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Probability::Probability(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Probability Probability::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad_literal(text);

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    const std::string_view den = text.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && num.front() == '-') {
      negative = true;
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) bad_literal(text);
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) bad_literal(text);
    mpq_class q(negative ? mpz_class(-n) : n, d);
    q.canonicalize();
    return Probability(q);
  }
  return Probability(parse_decimal(text));
}

std::string Probability::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

bool Probability::in_unit_interval() const { return sgn(value_) >= 0 && cmp(value_, 1) <= 0; }

Probability& Probability::operator+=(const Probability& rhs) {
  value_ += rhs.value_;
  return *this;
}

Probability& Probability::operator-=(const Probability& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Probability& Probability::operator*=(const Probability& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Probability& Probability::operator/=(const Probability& rhs) {
  if (rhs.is_zero()) throw InputError("division of a probability by zero");
  value_ /= rhs.value_;
  return *this;
}

}  // namespace causaldt
