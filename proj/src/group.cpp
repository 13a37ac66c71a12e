#include "sumfree/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "sumfree/errors.hpp"

namespace sumfree {

namespace {

constexpr std::size_t kAddTableCutoff = 1024;

}  // namespace

GroupSpec::GroupSpec(std::vector<std::uint32_t> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw DomainError("group needs at least one cyclic factor");
  for (auto f : factors_) {
    if (f < 2) throw DomainError("cyclic factor Z" + std::to_string(f) + " is below 2");
    if (order_ > (std::size_t{1} << 31) / f) throw DomainError("group order too large");
    order_ *= f;
  }
  strides_.assign(factors_.size(), 1);
  for (std::size_t i = factors_.size() - 1; i > 0; --i)
    strides_[i - 1] = strides_[i] * factors_[i];

  neg_.resize(order_);
  for (Element a = 0; a < order_; ++a) {
    Element r = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::uint32_t x = (a / strides_[i]) % factors_[i];
      r += ((factors_[i] - x) % factors_[i]) * strides_[i];
    }
    neg_[a] = r;
  }
  if (order_ <= kAddTableCutoff) {
    add_table_.resize(order_ * order_);
    for (Element a = 0; a < order_; ++a)
      for (Element b = 0; b < order_; ++b) {
        Element r = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
          std::uint32_t x = (a / strides_[i]) % factors_[i];
          std::uint32_t y = (b / strides_[i]) % factors_[i];
          r += ((x + y) % factors_[i]) * strides_[i];
        }
        add_table_[a * order_ + b] = r;
      }
  }
}

Element GroupSpec::add(Element a, Element b) const {
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * order_ + b];
  Element r = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::uint32_t x = (a / strides_[i]) % factors_[i];
    std::uint32_t y = (b / strides_[i]) % factors_[i];
    r += ((x + y) % factors_[i]) * strides_[i];
  }
  return r;
}

Element GroupSpec::scale(std::uint64_t t, Element a) const {
  Element r = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::uint64_t x = (a / strides_[i]) % factors_[i];
    r += static_cast<Element>((x * (t % factors_[i])) % factors_[i]) * strides_[i];
  }
  return r;
}

std::vector<std::uint32_t> GroupSpec::residues(Element a) const {
  std::vector<std::uint32_t> out(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) out[i] = (a / strides_[i]) % factors_[i];
  return out;
}

Element GroupSpec::from_residues(std::span<const std::int64_t> residues) const {
  if (residues.size() != factors_.size())
    throw DomainError("residue tuple has wrong length for " + to_string());
  Element r = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::int64_t n = factors_[i];
    r += static_cast<Element>(((residues[i] % n) + n) % n) * strides_[i];
  }
  return r;
}

std::string GroupSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += 'x';
    out += 'Z' + std::to_string(factors_[i]);
  }
  return out;
}

std::string GroupSpec::format_element(Element a) const {
  std::string out = "(";
  auto r = residues(a);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(r[i]);
  }
  return out + ")";
}

GroupSpec parse_group(std::string_view text) {
  std::vector<std::uint32_t> factors;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("bad group spec '" + std::string(text) + "': " + why);
  };
  while (true) {
    if (pos >= text.size() || std::tolower(static_cast<unsigned char>(text[pos])) != 'z')
      fail("expected 'Z' at position " + std::to_string(pos));
    ++pos;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected a cyclic order after 'Z'");
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + pos, value);
    if (ec != std::errc{} || value > 0xffffffffULL) fail("cyclic order out of range");
    factors.push_back(static_cast<std::uint32_t>(value));
    if (pos == text.size()) break;
    if (std::tolower(static_cast<unsigned char>(text[pos])) != 'x')
      fail("expected 'x' between factors");
    ++pos;
  }
  return GroupSpec(std::move(factors));
}

VertexSet parse_element_set(const GroupSpec& g, std::string_view text) {
  VertexSet s(g.order());
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size())
      throw ParseError("bad element index '" + token + "'");
    if (v >= g.order())
      throw DomainError("element index " + token + " out of range for " + g.to_string());
    s.insert(static_cast<std::size_t>(v));
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return s;
}

std::uint64_t element_order(const GroupSpec& g, Element a) {
  // lcm over components of n_i / gcd(x_i, n_i)
  std::uint64_t ord = 1;
  auto r = g.residues(a);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t n = g.factors()[i];
    std::uint64_t comp = n / std::gcd<std::uint64_t>(r[i], n);
    ord = std::lcm(ord, comp);
  }
  return ord;
}

std::size_t count_elements_of_order(const GroupSpec& g, std::uint64_t q) {
  std::size_t c = 0;
  for (Element a = 0; a < g.order(); ++a)
    if (element_order(g, a) == q) ++c;
  return c;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::optional<std::uint32_t> smallest_typeI_prime(const GroupSpec& g) {
  std::uint64_t n = g.order();
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (n % p != 0 || !is_prime(p)) continue;
    if (p % 3 == 2) return static_cast<std::uint32_t>(p);
  }
  return std::nullopt;
}

std::uint32_t Homomorphism::apply(const GroupSpec& g, Element x) const {
  auto r = g.residues(x);
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < r.size(); ++i) s += static_cast<std::uint64_t>(coeffs[i]) * r[i];
  return static_cast<std::uint32_t>(s % q);
}

std::vector<Homomorphism> surjective_homs_to_Zq(const GroupSpec& g, std::uint32_t q) {
  if (!is_prime(q)) throw DomainError("homomorphism target Z" + std::to_string(q) + " is not prime");
  std::vector<std::size_t> free_slots;
  for (std::size_t i = 0; i < g.rank(); ++i)
    if (g.factors()[i] % q == 0) free_slots.push_back(i);

  std::vector<Homomorphism> out;
  if (free_slots.empty()) return out;
  std::vector<std::uint32_t> digits(free_slots.size(), 0);
  while (true) {
    // odometer over Z_q^c, last slot fastest
    std::size_t k = digits.size();
    while (k > 0) {
      if (++digits[k - 1] < q) break;
      digits[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
    Homomorphism h{q, std::vector<std::uint32_t>(g.rank(), 0)};
    for (std::size_t j = 0; j < free_slots.size(); ++j) h.coeffs[free_slots[j]] = digits[j];
    out.push_back(std::move(h));
  }
  return out;
}

std::uint64_t character_phase(const GroupSpec& g, Element a, Element x) {
  const std::uint64_t n = g.order();
  auto ra = g.residues(a);
  auto rx = g.residues(x);
  std::uint64_t k = 0;
  for (std::size_t j = 0; j < ra.size(); ++j) {
    std::uint64_t nj = g.factors()[j];
    std::uint64_t t = (static_cast<std::uint64_t>(ra[j]) * rx[j]) % nj;
    k = (k + t * (n / nj)) % n;
  }
  return k;
}

std::complex<double> character_value(const GroupSpec& g, Element a, Element x) {
  const std::uint64_t k = character_phase(g, a, x);
  if (k == 0) return {1.0, 0.0};
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(g.order());
  return std::polar(1.0, theta);
}

std::size_t character_range_size(const GroupSpec& g, Element a) {
  const std::uint64_t n = g.order();
  auto ra = g.residues(a);
  std::uint64_t gg = n;
  for (std::size_t j = 0; j < ra.size(); ++j) {
    std::uint64_t nj = g.factors()[j];
    gg = std::gcd(gg, (static_cast<std::uint64_t>(ra[j]) % nj) * (n / nj));
  }
  return static_cast<std::size_t>(n / gg);
}

std::vector<VertexSet> index_two_subgroups(const GroupSpec& g) {
  std::vector<VertexSet> out;
  for (const auto& h : surjective_homs_to_Zq(g, 2)) {
    VertexSet ker(g.order());
    for (Element x = 0; x < g.order(); ++x)
      if (h.apply(g, x) == 0) ker.insert(x);
    out.push_back(std::move(ker));
  }
  return out;
}

}  // namespace sumfree
