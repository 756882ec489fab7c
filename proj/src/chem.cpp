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

#include "tetris/chem.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tetris/error.hpp"

namespace tetris {

namespace {

constexpr double kSymmetryTolerance = 1e-10;

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

// Finds "KEY=" in a namelist header and reads the integer after it.
bool header_int(const std::string& header, const std::string& key, int& out) {
  std::size_t pos = 0;
  while ((pos = header.find(key, pos)) != std::string::npos) {
    const bool word_start = pos == 0 || !std::isalnum(static_cast<unsigned char>(header[pos - 1]));
    std::size_t p = pos + key.size();
    while (p < header.size() && header[p] == ' ') ++p;
    if (word_start && p < header.size() && header[p] == '=') {
      ++p;
      while (p < header.size() && header[p] == ' ') ++p;
      const char* b = header.data() + p;
      auto [ptr, ec] = std::from_chars(b, header.data() + header.size(), out);
      return ec == std::errc{} && ptr != b;
    }
    pos += key.size();
  }
  return false;
}

double parse_real(const std::string& tok, int line) {
  // FCIDUMP writers sometimes emit Fortran exponents ("1.0D-03").
  std::string t = tok;
  std::replace(t.begin(), t.end(), 'D', 'E');
  std::replace(t.begin(), t.end(), 'd', 'e');
  double v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ParseError("non-numeric value '" + tok + "'", line);
  }
  return v;
}

int parse_index(const std::string& tok, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("non-integer index '" + tok + "'", line);
  }
  return v;
}

PauliSum ladder(int mode, int n, bool create, bool with_chain) {
  if (mode < 0 || mode >= n) throw DimensionError("mode index out of range");
  PauliString x(n), y(n);
  x.set(mode, Pauli::X);
  y.set(mode, Pauli::Y);
  if (with_chain) {
    for (int q = 0; q < mode; ++q) {
      x.set(q, Pauli::Z);
      y.set(q, Pauli::Z);
    }
  }
  PauliSum s(n);
  s.add(x, 0.5);
  s.add(y, create ? cplx(0, -0.5) : cplx(0, 0.5));
  return s;
}

void check_distinct(const std::vector<int>& idx, int n) {
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (idx[a] < 0 || idx[a] >= n) throw DimensionError("excitation index out of range");
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (idx[a] == idx[b]) throw std::invalid_argument("repeated excitation index");
    }
  }
}

}  // namespace

MolecularIntegrals::MolecularIntegrals(int orbital_count, int electron_count)
    : norb_(orbital_count),
      nelec_(electron_count),
      h1_(static_cast<std::size_t>(orbital_count) * orbital_count, 0.0),
      h2_(static_cast<std::size_t>(orbital_count) * orbital_count * orbital_count * orbital_count,
          0.0) {
  if (orbital_count < 1) throw std::invalid_argument("orbital count must be positive");
  if (electron_count < 0 || electron_count > 2 * orbital_count) {
    throw std::invalid_argument("electron count does not fit the orbital space");
  }
}

void MolecularIntegrals::set_one_body(int p, int q, double v) {
  h1_[p * norb_ + q] = v;
  h1_[q * norb_ + p] = v;
}

void MolecularIntegrals::set_two_body(int p, int q, int r, int s, double v) {
  for (auto [a, b, c, d] : {std::array{p, q, r, s}, std::array{q, p, r, s}, std::array{p, q, s, r},
                            std::array{q, p, s, r}, std::array{r, s, p, q}, std::array{s, r, p, q},
                            std::array{r, s, q, p}, std::array{s, r, q, p}}) {
    h2_[index(a, b, c, d)] = v;
  }
}

double MolecularIntegrals::max_symmetry_violation() const {
  double worst = 0.0;
  for (int p = 0; p < norb_; ++p) {
    for (int q = 0; q < norb_; ++q) {
      worst = std::max(worst, std::abs(one_body(p, q) - one_body(q, p)));
      for (int r = 0; r < norb_; ++r) {
        for (int s = 0; s < norb_; ++s) {
          const double v = two_body(p, q, r, s);
          worst = std::max({worst, std::abs(v - two_body(q, p, r, s)),
                            std::abs(v - two_body(p, q, s, r)), std::abs(v - two_body(r, s, p, q))});
        }
      }
    }
  }
  return worst;
}

int QubitHamiltonian::electron_count() const {
  return static_cast<int>(std::count(hf_reference.begin(), hf_reference.end(), '1'));
}

MolecularIntegrals parse_fcidump(std::istream& in) {
  std::string header;
  std::string line;
  int lineno = 0;
  bool header_done = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string u = upper(line);
    header += u + ' ';
    if (u.find("&END") != std::string::npos || u.find('/') != std::string::npos) {
      header_done = true;
      break;
    }
  }
  if (!header_done || header.find("&FCI") == std::string::npos) {
    throw ParseError("missing &FCI ... &END header", lineno);
  }
  int norb = 0, nelec = 0, ms2 = 0;
  if (!header_int(header, "NORB", norb) || norb < 1) {
    throw ParseError("header lacks a valid NORB", lineno);
  }
  if (!header_int(header, "NELEC", nelec) || nelec < 0 || nelec > 2 * norb) {
    throw ParseError("header lacks a valid NELEC", lineno);
  }
  header_int(header, "MS2", ms2);

  MolecularIntegrals m(norb, nelec);
  m.set_ms2(ms2);
  const std::size_t n = static_cast<std::size_t>(norb);
  std::vector<char> seen1(n * n, 0), seen2(n * n * n * n, 0);
  auto idx2 = [n](int p, int q, int r, int s) {
    return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks.size() != 5) throw ParseError("expected 'value p q r s'", lineno);
    const double v = parse_real(toks[0], lineno);
    int p = parse_index(toks[1], lineno), q = parse_index(toks[2], lineno);
    int r = parse_index(toks[3], lineno), s = parse_index(toks[4], lineno);
    for (int i : {p, q, r, s}) {
      if (i < 0 || i > norb) throw ParseError("index " + std::to_string(i) + " out of range", lineno);
    }
    if (p == 0 && q == 0 && r == 0 && s == 0) {
      m.set_core_energy(v);
    } else if (r == 0 && s == 0) {
      if (p == 0 || q == 0) continue;  // orbital energies, unused
      --p, --q;
      for (auto [a, b] : {std::pair{p, q}, std::pair{q, p}}) {
        if (seen1[a * n + b] && std::abs(m.one_body(a, b) - v) > kSymmetryTolerance) {
          throw SymmetryError("one-electron integral breaks h_pq = h_qp", lineno);
        }
      }
      seen1[p * n + q] = seen1[q * n + p] = 1;
      m.set_one_body(p, q, v);
    } else {
      if (p == 0 || q == 0 || r == 0 || s == 0) {
        throw ParseError("two-electron line with a zero index", lineno);
      }
      --p, --q, --r, --s;
      const std::array<std::array<int, 4>, 8> images{{{p, q, r, s}, {q, p, r, s}, {p, q, s, r},
                                                      {q, p, s, r}, {r, s, p, q}, {s, r, p, q},
                                                      {r, s, q, p}, {s, r, q, p}}};
      for (const auto& [a, b, c, d] : images) {
        if (seen2[idx2(a, b, c, d)] && std::abs(m.two_body(a, b, c, d) - v) > kSymmetryTolerance) {
          throw SymmetryError("two-electron integral breaks 8-fold permutational symmetry", lineno);
        }
      }
      for (const auto& [a, b, c, d] : images) seen2[idx2(a, b, c, d)] = 1;
      m.set_two_body(p, q, r, s, v);
    }
  }
  return m;
}

MolecularIntegrals parse_fcidump_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_fcidump(in);
}

PauliSum jw_annihilation(int mode, int n) { return ladder(mode, n, false, true); }
PauliSum jw_creation(int mode, int n) { return ladder(mode, n, true, true); }
PauliSum qubit_annihilation(int q, int n) { return ladder(q, n, false, false); }
PauliSum qubit_creation(int q, int n) { return ladder(q, n, true, false); }

PauliSum number_operator(int n) {
  PauliSum s(n);
  for (int q = 0; q < n; ++q) {
    PauliString z(n);
    z.set(q, Pauli::Z);
    s.add(PauliKey{}, 0.5);
    s.add(z, -0.5);
  }
  return s;
}

QubitHamiltonian jordan_wigner(const MolecularIntegrals& m) {
  const int norb = m.orbital_count();
  const int n = 2 * norb;
  if (n > kMaxQubits) throw DimensionError("too many spin orbitals for a 64-qubit register");

  std::vector<PauliSum> create, annihilate;
  for (int p = 0; p < n; ++p) {
    create.push_back(jw_creation(p, n));
    annihilate.push_back(jw_annihilation(p, n));
  }
  auto spatial = [](int p) { return p / 2; };
  auto spin = [](int p) { return p % 2; };

  PauliSum h(n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (spin(p) != spin(q)) continue;
      const double v = m.one_body(spatial(p), spatial(q));
      if (v == 0.0) continue;
      h += (create[p] * annihilate[q]) * cplx(v);
    }
  }

  // 1/2 sum <pq|rs> a+_p a+_q a_s a_r with <pq|rs> = (pr|qs) for matching spins.
  std::vector<PauliSum> cc(n * n, PauliSum(n)), aa(n * n, PauliSum(n));
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      cc[p * n + q] = create[p] * create[q];
      aa[p * n + q] = annihilate[p] * annihilate[q];
    }
  }
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      for (int r = 0; r < n; ++r) {
        if (spin(r) != spin(p)) continue;
        for (int s = 0; s < n; ++s) {
          if (s == r || spin(s) != spin(q)) continue;
          const double v = m.two_body(spatial(p), spatial(r), spatial(q), spatial(s));
          if (v == 0.0) continue;
          h += (cc[p * n + q] * aa[s * n + r]) * cplx(0.5 * v);
        }
      }
    }
  }

  QubitHamiltonian out;
  out.qubit_count = n;
  out.constant_offset = m.core_energy() + h.coefficient(PauliKey{}).real();
  out.pauli_sum = PauliSum(n);
  for (const auto& [k, c] : h.terms()) {
    if (k.support() == 0) continue;
    // The exact image is real; rounding leaves imaginary dust.
    if (std::abs(c.real()) >= PauliSum::kDedupFloor) out.pauli_sum.add(k, c.real());
  }
  out.hf_reference = std::string(m.electron_count(), '1') + std::string(n - m.electron_count(), '0');
  return out;
}

PauliSum strip_z(const PauliSum& s) {
  PauliSum out(s.qubit_count());
  for (const auto& [k, c] : s.terms()) out.add(PauliKey{k.x, k.z & k.x}, c);
  return out;
}

PauliSum excitation_generator(const std::vector<int>& from, const std::vector<int>& to,
                              ExcitationKind kind, int n) {
  if (from.size() != to.size() || from.empty() || from.size() > 2) {
    throw std::invalid_argument("excitations move one or two modes");
  }
  std::vector<int> all = from;
  all.insert(all.end(), to.begin(), to.end());
  check_distinct(all, n);

  PauliSum op = PauliSum::identity(n);
  for (int p : to) op = op * jw_creation(p, n);
  // a_k a_l for from = {k, l}.
  for (int p : from) op = op * jw_annihilation(p, n);
  PauliSum g = op - op.adjoint();
  if (kind == ExcitationKind::kQubit) g = strip_z(g);
  return g;
}

PauliSum jw_excitation(const std::vector<int>& indices, ExcitationKind kind, int n) {
  if (indices.size() != 2 && indices.size() != 4) {
    throw std::invalid_argument("jw_excitation takes 2 or 4 indices");
  }
  for (std::size_t a = 1; a < indices.size(); ++a) {
    if (indices[a] <= indices[a - 1]) {
      throw std::invalid_argument("excitation indices must be strictly increasing");
    }
  }
  if (indices.size() == 2) return excitation_generator({indices[1]}, {indices[0]}, kind, n);
  return excitation_generator({indices[2], indices[3]}, {indices[0], indices[1]}, kind, n);
}

QubitHamiltonian hamiltonian_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  QubitHamiltonian h;
  try {
    h.qubit_count = doc.at("qubit_count").get<int>();
    h.pauli_sum = PauliSum(h.qubit_count);
    h.constant_offset = doc.value("constant", 0.0);
    h.hf_reference = doc.at("hf_reference").get<std::string>();
    for (const auto& t : doc.at("terms")) {
      const auto key = PauliString::parse(t.at("string").get<std::string>(), h.qubit_count);
      const double c = t.at("coeff").get<double>();
      if (key.support_mask() == 0) {
        h.constant_offset += c * key.phase().real();
      } else {
        h.pauli_sum.add(key, c);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad Hamiltonian document: ") + e.what());
  }
  if (static_cast<int>(h.hf_reference.size()) != h.qubit_count ||
      h.hf_reference.find_first_not_of("01") != std::string::npos) {
    throw ParseError("hf_reference must be a 0/1 string of length qubit_count");
  }
  if (!h.pauli_sum.is_hermitian()) throw ParseError("Hamiltonian terms are not hermitian");
  return h;
}

std::string hamiltonian_to_json(const QubitHamiltonian& h) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : h.pauli_sum.terms()) {
    if (std::abs(c.imag()) > 1e-12) throw std::invalid_argument("non-hermitian Hamiltonian term");
    terms.push_back({{"coeff", c.real()}, {"string", PauliString(h.qubit_count, k).str()}});
  }
  nlohmann::json doc{{"qubit_count", h.qubit_count},
                     {"constant", h.constant_offset},
                     {"hf_reference", h.hf_reference},
                     {"terms", terms}};
  return doc.dump(2);
}

QubitHamiltonian load_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  if (path.extension() == ".json") {
    std::stringstream ss;
    ss << in.rdbuf();
    return hamiltonian_from_json(ss.str());
  }
  return jordan_wigner(parse_fcidump(in));
}

}  // namespace tetris
