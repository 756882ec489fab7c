// Copyright 2026 The tetris-adapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tetris/pauli.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>

#include "tetris/error.hpp"

namespace tetris {

namespace {

constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw DimensionError("qubit count " + std::to_string(n) + " outside [1, 64]");
  }
}

QubitMask full_mask(int n) { return n == 64 ? ~QubitMask{0} : (QubitMask{1} << n) - 1; }

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view s, int line = 0) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("bad number '" + std::string(s) + "'", line);
  }
  return v;
}

std::string format_coeff(cplx c) {
  const bool real = c.imag() == 0.0;
  const bool imag = c.real() == 0.0 && !real;
  if (real) return (c.real() < 0 ? "" : "+") + format_double(c.real());
  if (imag) return (c.imag() < 0 ? "" : "+") + format_double(c.imag()) + "i";
  return "+(" + format_double(c.real()) + (c.imag() < 0 ? "" : "+") + format_double(c.imag()) +
         "i)";
}

cplx parse_coeff(std::string_view tok) {
  // tok starts with '+' or '-'.
  if (tok.size() >= 2 && tok[1] == '(') {
    if (tok[0] != '+' || tok.back() != ')' || tok.size() < 5 || tok[tok.size() - 2] != 'i') {
      throw ParseError("bad complex coefficient '" + std::string(tok) + "'");
    }
    std::string_view body = tok.substr(2, tok.size() - 4);  // "re±im"
    std::size_t split = body.find_last_of("+-");
    if (split == 0 || split == std::string_view::npos) {
      throw ParseError("bad complex coefficient '" + std::string(tok) + "'");
    }
    // An exponent sign ("1e-05") is not a split point.
    while (split > 0 && (body[split - 1] == 'e' || body[split - 1] == 'E')) {
      split = body.find_last_of("+-", split - 1);
      if (split == 0 || split == std::string_view::npos) {
        throw ParseError("bad complex coefficient '" + std::string(tok) + "'");
      }
    }
    return {parse_double(body.substr(0, split)), parse_double(body.substr(split))};
  }
  std::string_view num = tok.front() == '+' ? tok.substr(1) : tok;
  if (!num.empty() && num.back() == 'i') {
    return {0.0, parse_double(num.substr(0, num.size() - 1))};
  }
  return {parse_double(num), 0.0};
}

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

// Parses a run of factor tokens ("X2", "Y7", "I") into a key.
PauliKey parse_factors(const std::vector<std::string_view>& toks, std::size_t begin,
                       std::size_t end, int n) {
  PauliKey key;
  for (std::size_t t = begin; t < end; ++t) {
    std::string_view tok = toks[t];
    if (tok == "I") continue;
    if (tok.size() < 2) throw ParseError("bad Pauli factor '" + std::string(tok) + "'");
    int q = 0;
    auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), q);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ParseError("bad qubit index in '" + std::string(tok) + "'");
    }
    if (q < 0 || q >= n) {
      throw ParseError("qubit index " + std::to_string(q) + " out of range");
    }
    const QubitMask bit = QubitMask{1} << q;
    if (key.support() & bit) throw ParseError("qubit " + std::to_string(q) + " repeated");
    switch (tok[0]) {
      case 'X': key.x |= bit; break;
      case 'Y': key.x |= bit; key.z |= bit; break;
      case 'Z': key.z |= bit; break;
      case 'I': break;
      default: throw ParseError("bad Pauli symbol in '" + std::string(tok) + "'");
    }
  }
  return key;
}

std::string render_key(const PauliKey& key) {
  if (key.support() == 0) return "I";
  std::string out;
  for (int q : mask_to_indices(key.support())) {
    if (!out.empty()) out += ' ';
    const bool x = (key.x >> q) & 1, z = (key.z >> q) & 1;
    out += x ? (z ? 'Y' : 'X') : 'Z';
    out += std::to_string(q);
  }
  return out;
}

}  // namespace

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

int PauliKey::y_count() const { return std::popcount(x & z); }

bool PauliKey::commutes_with(const PauliKey& o) const {
  return (std::popcount((x & o.z) ^ (z & o.x)) & 1) == 0;
}

int product_phase(const PauliKey& a, const PauliKey& b) {
  const QubitMask xa = a.x & ~a.z, ya = a.x & a.z, za = ~a.x & a.z;
  const QubitMask xb = b.x & ~b.z, yb = b.x & b.z, zb = ~b.x & b.z;
  // XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i.
  const QubitMask plus = (xa & yb) | (ya & zb) | (za & xb);
  const QubitMask minus = (ya & xb) | (za & yb) | (xa & zb);
  return ((std::popcount(plus) - std::popcount(minus)) % 4 + 4) % 4;
}

PauliString::PauliString(int qubit_count, PauliKey key, int phase_exponent)
    : qubit_count_(qubit_count), key_(key), phase_(((phase_exponent % 4) + 4) % 4) {
  check_qubit_count(qubit_count);
  if (key.support() & ~full_mask(qubit_count)) {
    throw DimensionError("Pauli key has factors beyond qubit " + std::to_string(qubit_count - 1));
  }
}

PauliString PauliString::parse(std::string_view text, int qubit_count) {
  check_qubit_count(qubit_count);
  auto toks = split_ws(text);
  int phase = 0;
  std::size_t begin = 0;
  if (!toks.empty()) {
    std::string_view t = toks[0];
    if (t == "+") { phase = 0; begin = 1; }
    else if (t == "-") { phase = 2; begin = 1; }
    else if (t == "i" || t == "+i") { phase = 1; begin = 1; }
    else if (t == "-i") { phase = 3; begin = 1; }
  }
  if (begin == toks.size()) throw ParseError("empty Pauli string");
  return PauliString(qubit_count, parse_factors(toks, begin, toks.size(), qubit_count), phase);
}

cplx PauliString::phase() const { return kIPow[phase_]; }

Pauli PauliString::at(int q) const {
  if (q < 0 || q >= qubit_count_) throw DimensionError("qubit index out of range");
  const bool x = (key_.x >> q) & 1, z = (key_.z >> q) & 1;
  return x ? (z ? Pauli::Y : Pauli::X) : (z ? Pauli::Z : Pauli::I);
}

PauliString& PauliString::set(int q, Pauli p) {
  if (q < 0 || q >= qubit_count_) throw DimensionError("qubit index out of range");
  const QubitMask bit = QubitMask{1} << q;
  key_.x &= ~bit;
  key_.z &= ~bit;
  if (p == Pauli::X || p == Pauli::Y) key_.x |= bit;
  if (p == Pauli::Z || p == Pauli::Y) key_.z |= bit;
  return *this;
}

int PauliString::weight() const { return std::popcount(key_.support()); }

std::string PauliString::str() const {
  static constexpr const char* kPrefix[4] = {"", "i ", "- ", "-i "};
  return kPrefix[phase_] + render_key(key_);
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.qubit_count() != b.qubit_count()) {
    throw DimensionError("Pauli product of " + std::to_string(a.qubit_count()) + " and " +
                         std::to_string(b.qubit_count()) + " qubit strings");
  }
  const PauliKey key{a.key().x ^ b.key().x, a.key().z ^ b.key().z};
  return PauliString(a.qubit_count(), key,
                     a.phase_exponent() + b.phase_exponent() + product_phase(a.key(), b.key()));
}

// ---------------------------------------------------------------------------

PauliSum::PauliSum(int qubit_count) : qubit_count_(qubit_count) { check_qubit_count(qubit_count); }

PauliSum::PauliSum(const PauliString& p, cplx coeff) : qubit_count_(p.qubit_count()) {
  add(p, coeff);
}

PauliSum PauliSum::identity(int qubit_count, cplx coeff) {
  PauliSum s(qubit_count);
  s.add(PauliKey{}, coeff);
  return s;
}

PauliSum PauliSum::parse(std::string_view text, int qubit_count) {
  PauliSum out(qubit_count);
  auto toks = split_ws(text);
  if (toks.size() == 1 && toks[0] == "0") return out;
  std::size_t t = 0;
  while (t < toks.size()) {
    if (toks[t].empty() || (toks[t][0] != '+' && toks[t][0] != '-')) {
      throw ParseError("expected signed coefficient, got '" + std::string(toks[t]) + "'");
    }
    cplx c = parse_coeff(toks[t]);
    std::size_t end = t + 1;
    while (end < toks.size() && toks[end][0] != '+' && toks[end][0] != '-') ++end;
    if (end == t + 1) throw ParseError("coefficient without Pauli string");
    out.add(parse_factors(toks, t + 1, end, qubit_count), c);
    t = end;
  }
  return out;
}

cplx PauliSum::coefficient(const PauliKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? cplx{} : it->second;
}

void PauliSum::add(const PauliKey& key, cplx coeff) {
  if (key.support() & ~full_mask(qubit_count_)) {
    throw DimensionError("term acts beyond qubit " + std::to_string(qubit_count_ - 1));
  }
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) < kDedupFloor) terms_.erase(it);
}

void PauliSum::add(const PauliString& p, cplx coeff) {
  if (p.qubit_count() != qubit_count_) throw DimensionError("term size does not match sum");
  add(p.key(), coeff * p.phase());
}

void PauliSum::check_same_size(const PauliSum& other) const {
  if (other.qubit_count_ != qubit_count_) {
    throw DimensionError("Pauli sums on " + std::to_string(qubit_count_) + " and " +
                         std::to_string(other.qubit_count_) + " qubits");
  }
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  check_same_size(other);
  for (const auto& [k, c] : other.terms_) add(k, c);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  check_same_size(other);
  for (const auto& [k, c] : other.terms_) add(k, -c);
  return *this;
}

PauliSum& PauliSum::operator*=(cplx scalar) {
  for (auto& [k, c] : terms_) c *= scalar;
  prune();
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  a.check_same_size(b);
  PauliSum out(a.qubit_count_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      const PauliKey k{ka.x ^ kb.x, ka.z ^ kb.z};
      auto [it, inserted] = out.terms_.try_emplace(k, ca * cb * kIPow[product_phase(ka, kb)]);
      if (!inserted) it->second += ca * cb * kIPow[product_phase(ka, kb)];
    }
  }
  out.prune();
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(qubit_count_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, std::conj(c));
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [k, c] : terms_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

bool PauliSum::is_antihermitian(double tol) const {
  for (const auto& [k, c] : terms_) {
    if (std::abs(c.real()) > tol) return false;
  }
  return true;
}

bool PauliSum::terms_commute() const {
  for (auto a = terms_.begin(); a != terms_.end(); ++a) {
    for (auto b = std::next(a); b != terms_.end(); ++b) {
      if (!a->first.commutes_with(b->first)) return false;
    }
  }
  return true;
}

QubitMask PauliSum::support_mask() const {
  QubitMask m = 0;
  for (const auto& [k, c] : terms_) m |= k.support();
  return m;
}

std::string PauliSum::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += ' ';
    out += format_coeff(c);
    out += ' ';
    out += render_key(k);
  }
  return out;
}

void PauliSum::prune(double floor) {
  std::erase_if(terms_, [floor](const auto& kv) { return std::abs(kv.second) < floor; });
}

bool PauliSum::approx_equal(const PauliSum& other, double tol) const {
  if (other.qubit_count_ != qubit_count_) return false;
  for (const auto& [k, c] : terms_) {
    if (std::abs(c - other.coefficient(k)) > tol) return false;
  }
  for (const auto& [k, c] : other.terms_) {
    if (std::abs(c - coefficient(k)) > tol) return false;
  }
  return true;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  if (a.qubit_count() != b.qubit_count()) {
    throw DimensionError("commutator of sums on different registers");
  }
  PauliSum out(a.qubit_count());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      if (ka.commutes_with(kb)) continue;
      out.add(PauliKey{ka.x ^ kb.x, ka.z ^ kb.z}, 2.0 * ca * cb * kIPow[product_phase(ka, kb)]);
    }
  }
  out.prune();
  return out;
}

std::vector<int> mask_to_indices(QubitMask mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

QubitMask indices_to_mask(const std::vector<int>& indices) {
  QubitMask m = 0;
  for (int q : indices) m |= QubitMask{1} << q;
  return m;
}

std::vector<int> support(const PauliString& p) { return mask_to_indices(p.support_mask()); }
std::vector<int> support(const PauliSum& s) { return mask_to_indices(s.support_mask()); }

Eigen::MatrixXcd to_matrix(const PauliSum& s, int max_qubits) {
  const int n = s.qubit_count();
  if (n > max_qubits) {
    throw CapacityError("dense matrix of " + std::to_string(n) + " qubits exceeds cap " +
                        std::to_string(max_qubits));
  }
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [k, c] : s.terms()) {
    const cplx yphase = kIPow[k.y_count() % 4];
    for (std::size_t b = 0; b < dim; ++b) {
      const double sign = (std::popcount(b & k.z) & 1) ? -1.0 : 1.0;
      m(b ^ k.x, b) += c * yphase * sign;
    }
  }
  return m;
}

Eigen::MatrixXcd to_matrix(const PauliString& p, int max_qubits) {
  return to_matrix(PauliSum(p), max_qubits);
}

}  // namespace tetris
