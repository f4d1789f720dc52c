#include "fulldp/gf.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <mutex>
#include <sstream>

#include "fulldp/poly.hpp"

namespace fulldp::gf {

namespace {

constexpr std::uint32_t kTableLimit = 1U << 21;
constexpr std::uint32_t kNoLog = 0xffffffffU;
constexpr std::uint32_t kMaxDegree = 32;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint32_t> find_modulus(std::uint32_t p, std::uint32_t k) {
  if (k == 1) return {0, 1};
  const FieldPtr base = make_field(p, 1);
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  // Candidate n encodes the lower coefficients with t^(k-1) most significant, so
  // increasing n walks the monic polynomials in the required lexicographic order.
  for (std::uint64_t n = 0; n < count; ++n) {
    poly::Poly f(k + 1);
    std::uint64_t rest = n;
    for (std::uint32_t i = 0; i < k; ++i) {
      f[i] = Elem{static_cast<std::uint32_t>(rest % p)};
      rest /= p;
    }
    f[k] = Elem{1};
    if (f[0].code == 0) continue;
    if (poly::is_irreducible(*base, f)) {
      std::vector<std::uint32_t> m(k + 1);
      for (std::uint32_t i = 0; i <= k; ++i) m[i] = f[i].code;
      return m;
    }
  }
  throw std::logic_error("no irreducible polynomial found");
}

std::uint32_t parse_u32(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw FieldError("expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldPtr make_field(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (p == 2) throw FieldError("even characteristic is not supported");
  if (k == 0) throw FieldError("extension degree must be at least 1");
  if (k > kMaxDegree) throw FieldError("extension degree too large");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > Field::kMaxOrder) throw FieldError("field order exceeds 37^6");
  }

  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({p, k});
    if (it != cache.end()) return it->second;
  }
  // Built outside the lock: find_modulus recursively asks for the prime field.
  auto field = std::make_shared<const Field>(p, k, find_modulus(p, k));
  std::lock_guard lock(mutex);
  return cache.emplace(std::pair{p, k}, std::move(field)).first->second;
}

FieldPtr make_field_of_order(std::uint64_t q) {
  if (q < 3) throw FieldError("field order must be at least 3");
  std::uint64_t p = prime_factors(q).front();
  std::uint32_t k = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw FieldError(std::to_string(q) + " is not a prime power");
  return make_field(static_cast<std::uint32_t>(p), k);
}

FieldPtr parse_field(std::string_view text) {
  std::string_view head = text;
  std::string_view tail;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    head = text.substr(0, colon);
    tail = text.substr(colon + 1);
  }
  FieldPtr field;
  if (auto caret = head.find('^'); caret != std::string_view::npos)
    field = make_field(parse_u32(head.substr(0, caret)), parse_u32(head.substr(caret + 1)));
  else
    field = make_field_of_order(parse_u32(head));
  if (!tail.empty()) {
    std::vector<std::uint32_t> m;
    for (auto part : split(tail, ',')) m.push_back(parse_u32(part));
    if (m != field->modulus())
      throw FieldError("modulus " + std::string(tail) + " is not the canonical modulus of " + field->serialize());
  }
  return field;
}

Field::Field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), q_(1), modulus_(std::move(modulus)) {
  pow_p_.push_back(1);
  for (std::uint32_t i = 0; i < k_; ++i) {
    q_ *= p_;
    pow_p_.push_back(q_);
  }
  if (k_ > 1 && q_ <= kTableLimit) build_tables();
  for (std::uint32_t c = 2; c < q_; ++c) {
    if (!is_square(Elem{c})) {
      nonsquare_ = Elem{c};
      break;
    }
  }
}

void Field::build_tables() {
  const std::uint32_t order = q_ - 1;
  const auto factors = prime_factors(order);
  Elem g{0};
  for (std::uint32_t c = 2; c < q_; ++c) {
    bool primitive = true;
    for (auto l : factors) {
      if (pow(Elem{c}, order / l) == one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = Elem{c};
      break;
    }
  }
  exp_.resize(order);
  std::vector<std::uint32_t> log(q_, 0);
  Elem x = one();
  for (std::uint32_t i = 0; i < order; ++i) {
    exp_[i] = x.code;
    log[x.code] = i;
    x = mul_vec(x, g);
  }
  zech_.resize(order);
  for (std::uint32_t n = 0; n < order; ++n) {
    const std::uint32_t c = exp_[n];
    const std::uint32_t d0 = c % p_;
    const std::uint32_t plus_one = c - d0 + (d0 + 1) % p_;
    zech_[n] = plus_one == 0 ? kNoLog : log[plus_one];
  }
  log_ = std::move(log);  // enables the table path in mul()
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem Field::from_coords(std::span<const std::uint32_t> coords) const {
  if (coords.size() != k_) throw FieldError("expected " + std::to_string(k_) + " coordinates");
  std::uint32_t code = 0;
  for (std::size_t i = coords.size(); i-- > 0;) {
    if (coords[i] >= p_) throw FieldError("coordinate out of range");
    code = code * p_ + coords[i];
  }
  return Elem{code};
}

std::vector<std::uint32_t> Field::coords(Elem x) const {
  std::vector<std::uint32_t> out(k_);
  std::uint32_t c = x.code;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out[i] = c % p_;
    c /= p_;
  }
  return out;
}

std::vector<Elem> Field::enumerate() const {
  std::vector<Elem> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = Elem{i};
  return out;
}

Elem Field::add_ext(Elem a, Elem b) const {
  if (a.code == 0) return b;
  if (b.code == 0) return a;
  if (!log_.empty()) {
    const std::uint32_t order = q_ - 1;
    const std::uint32_t la = log_[a.code];
    const std::uint32_t lb = log_[b.code];
    const std::uint32_t d = lb >= la ? lb - la : lb + order - la;
    const std::uint32_t z = zech_[d];
    if (z == kNoLog) return Elem{0};
    std::uint32_t s = la + z;
    if (s >= order) s -= order;
    return Elem{exp_[s]};
  }
  std::uint32_t ca = a.code, cb = b.code, out = 0;
  for (std::uint32_t i = 0; i < k_; ++i) {
    std::uint32_t d = ca % p_ + cb % p_;
    if (d >= p_) d -= p_;
    out += d * pow_p_[i];
    ca /= p_;
    cb /= p_;
  }
  return Elem{out};
}

Elem Field::neg_ext(Elem a) const {
  if (a.code == 0) return a;
  if (!log_.empty()) {
    const std::uint32_t order = q_ - 1;
    std::uint32_t s = log_[a.code] + order / 2;
    if (s >= order) s -= order;
    return Elem{exp_[s]};
  }
  std::uint32_t ca = a.code, out = 0;
  for (std::uint32_t i = 0; i < k_; ++i) {
    const std::uint32_t d = ca % p_;
    out += (d == 0 ? 0 : p_ - d) * pow_p_[i];
    ca /= p_;
  }
  return Elem{out};
}

Elem Field::mul_vec(Elem a, Elem b) const {
  std::array<std::uint64_t, kMaxDegree> da{}, db{};
  std::array<std::uint64_t, 2 * kMaxDegree> prod{};
  std::uint32_t ca = a.code, cb = b.code;
  for (std::uint32_t i = 0; i < k_; ++i) {
    da[i] = ca % p_;
    db[i] = cb % p_;
    ca /= p_;
    cb /= p_;
  }
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  }
  for (std::uint32_t i = 2 * k_ - 2; i >= k_; --i) {
    const std::uint64_t c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (std::uint32_t j = 0; j < k_; ++j)
      prod[i - k_ + j] = (prod[i - k_ + j] + c * (p_ - modulus_[j])) % p_;
  }
  std::uint32_t out = 0;
  for (std::uint32_t i = k_; i-- > 0;) out = out * p_ + static_cast<std::uint32_t>(prod[i]);
  return Elem{out};
}

Elem Field::inv(Elem a) const {
  if (a.code == 0) throw FieldError("inverse of zero");
  if (!log_.empty()) {
    const std::uint32_t l = log_[a.code];
    return Elem{exp_[l == 0 ? 0 : q_ - 1 - l]};
  }
  return pow(a, q_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (!log_.empty() && a.code != 0) {
    const std::uint64_t order = q_ - 1;
    return Elem{exp_[(std::uint64_t{log_[a.code]} * (e % order)) % order]};
  }
  Elem result = one();
  Elem base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

bool Field::is_square(Elem x) const {
  if (x.code == 0) return true;
  if (!log_.empty()) return log_[x.code] % 2 == 0;
  return pow(x, (std::uint64_t{q_} - 1) / 2) == one();
}

Elem Field::tonelli_shanks(Elem x) const {
  std::uint64_t t = q_ - 1;
  std::uint32_t s = 0;
  while (t % 2 == 0) {
    t /= 2;
    ++s;
  }
  Elem c = pow(nonsquare_, t);
  Elem r = pow(x, (t + 1) / 2);
  Elem tt = pow(x, t);
  std::uint32_t m = s;
  while (tt != one()) {
    std::uint32_t i = 0;
    Elem probe = tt;
    while (probe != one()) {
      probe = sqr(probe);
      ++i;
    }
    Elem b = c;
    for (std::uint32_t j = 0; j + i + 1 < m; ++j) b = sqr(b);
    r = mul(r, b);
    c = sqr(b);
    tt = mul(tt, c);
    m = i;
  }
  return r;
}

std::optional<Elem> Field::sqrt(Elem x) const {
  if (x.code == 0) return zero();
  if (!is_square(x)) return std::nullopt;
  Elem r;
  if (!log_.empty())
    r = Elem{exp_[log_[x.code] / 2]};
  else
    r = tonelli_shanks(x);
  const Elem other = neg(r);
  return std::min(r, other);
}

std::string Field::serialize() const {
  std::ostringstream os;
  os << p_ << '^' << k_ << ':';
  for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
  return os.str();
}

std::string Field::format(Elem x) const {
  std::ostringstream os;
  auto c = coords(x);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  return os.str();
}

Elem Field::parse(std::string_view text) const {
  auto parts = split(text, ',');
  if (parts.size() == 1) {
    bool negative = false;
    std::string_view s = parts[0];
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    if (!s.empty() && s.front() == '-') {
      negative = true;
      s.remove_prefix(1);
    }
    const std::int64_t v = parse_u32(s);
    return from_int(negative ? -v : v);
  }
  if (parts.size() != k_)
    throw FieldError("element '" + std::string(text) + "' needs " + std::to_string(k_) + " coordinates");
  std::vector<std::uint32_t> c;
  for (auto part : parts) c.push_back(parse_u32(part));
  return from_coords(c);
}

FieldElement::FieldElement(FieldPtr field, std::int64_t v) : field_(std::move(field)) {
  value_ = field_->from_int(v);
}

const Field& FieldElement::checked(const FieldElement& o) const {
  if (!field_->same_as(*o.field_)) throw FieldError("mixed-field operands");
  return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const { return {field_, checked(o).add(value_, o.value_)}; }
FieldElement FieldElement::operator-(const FieldElement& o) const { return {field_, checked(o).sub(value_, o.value_)}; }
FieldElement FieldElement::operator*(const FieldElement& o) const { return {field_, checked(o).mul(value_, o.value_)}; }
FieldElement FieldElement::operator/(const FieldElement& o) const { return {field_, checked(o).div(value_, o.value_)}; }
bool FieldElement::operator==(const FieldElement& o) const { return checked(o), value_ == o.value_; }

std::optional<FieldElement> FieldElement::sqrt() const {
  auto r = field_->sqrt(value_);
  if (!r) return std::nullopt;
  return FieldElement{field_, *r};
}

Embedding::Embedding(FieldPtr src, FieldPtr tgt, Elem image)
    : src_(std::move(src)), tgt_(std::move(tgt)), image_(image) {
  Elem power = tgt_->one();
  for (std::uint32_t i = 0; i < src_->k(); ++i) {
    basis_images_.push_back(power);
    power = tgt_->mul(power, image_);
  }
}

Embedding Embedding::make(FieldPtr src, FieldPtr tgt) {
  if (src->p() != tgt->p()) throw FieldError("embedding between different characteristics");
  if (tgt->k() % src->k() != 0) throw FieldError("source degree does not divide target degree");
  if (src->k() == 1) return Embedding(std::move(src), std::move(tgt), Elem{0});
  poly::Poly m;
  for (auto c : src->modulus()) m.push_back(tgt->from_int(c));
  auto r = poly::roots(*tgt, m);
  if (r.empty()) throw std::logic_error("source modulus has no root in target field");
  return Embedding(std::move(src), std::move(tgt), r.front());
}

Elem Embedding::apply(Elem x) const {
  if (src_->k() == 1) return tgt_->from_int(x.code);
  const auto c = src_->coords(x);
  Elem out = tgt_->zero();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) out = tgt_->add(out, tgt_->mul(tgt_->from_int(c[i]), basis_images_[i]));
  return out;
}

}  // namespace fulldp::gf
