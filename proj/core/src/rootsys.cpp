#include "qqbethe/rootsys.hpp"

#include <cctype>
#include <sstream>

#include "qqbethe/error.hpp"

namespace qqb {

char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

std::string CartanType::name() const { return family_letter(family) + std::to_string(rank); }

bool CartanType::simply_laced() const {
  return family == Family::A || family == Family::D || family == Family::E;
}

bool valid_type(Family f, int rank) {
  switch (f) {
    case Family::A: return rank >= 1;
    case Family::B: return rank >= 2;
    case Family::C: return rank >= 2;
    case Family::D: return rank >= 4;
    case Family::E: return rank >= 6 && rank <= 8;
    case Family::F: return rank == 4;
    case Family::G: return rank == 2;
  }
  return false;
}

CartanType make_type(char family, int rank) {
  char u = static_cast<char>(std::toupper(static_cast<unsigned char>(family)));
  if (u < 'A' || u > 'G') throw Error(std::string("unknown Lie family ") + family);
  Family f = static_cast<Family>(u - 'A');
  if (!valid_type(f, rank))
    throw Error("invalid Cartan type " + std::string(1, u) + std::to_string(rank));
  return {f, rank};
}

CartanType parse_type(const std::string& s) {
  if (s.size() < 2) throw ParseError("bad Cartan type: " + s);
  int rank = 0;
  for (size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw ParseError("bad Cartan type: " + s);
    rank = rank * 10 + (s[i] - '0');
    if (rank > 1000) throw ParseError("rank too large: " + s);
  }
  return make_type(s[0], rank);
}

namespace {

void bond(CartanMatrix& c, int i, int j) {
  c(i, j) = -1;
  c(j, i) = -1;
}

}  // namespace

CartanMatrix cartan_matrix(const CartanType& t) {
  if (!valid_type(t.family, t.rank)) throw Error("invalid Cartan type " + t.name());
  const int n = t.rank;
  CartanMatrix c{n, std::vector<int>(n * n, 0)};
  for (int i = 0; i < n; ++i) c(i, i) = 2;
  switch (t.family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) bond(c, i, i + 1);
      break;
    case Family::B:
      for (int i = 0; i + 1 < n; ++i) bond(c, i, i + 1);
      c(n - 1, n - 2) = -2;  // alpha_n short
      break;
    case Family::C:
      for (int i = 0; i + 1 < n; ++i) bond(c, i, i + 1);
      c(n - 2, n - 1) = -2;  // alpha_n long
      break;
    case Family::D:
      for (int i = 0; i + 2 < n; ++i) bond(c, i, i + 1);
      bond(c, n - 3, n - 1);
      break;
    case Family::E:
      // 1-3-4-5-6-..., 2 attached to 4
      bond(c, 0, 2);
      bond(c, 2, 3);
      bond(c, 1, 3);
      for (int i = 3; i + 1 < n; ++i) bond(c, i, i + 1);
      break;
    case Family::F:
      bond(c, 0, 1);
      bond(c, 1, 2);
      bond(c, 2, 3);
      c(2, 1) = -2;
      break;
    case Family::G:
      c(0, 1) = -3;
      c(1, 0) = -1;
      break;
  }
  return c;
}

bool valid_cartan(const CartanMatrix& c) {
  if (c.rank <= 0 || static_cast<int>(c.a.size()) != c.rank * c.rank) return false;
  for (int i = 0; i < c.rank; ++i) {
    if (c(i, i) != 2) return false;
    for (int j = 0; j < c.rank; ++j) {
      if (i == j) continue;
      if (c(i, j) > 0) return false;
      if ((c(i, j) == 0) != (c(j, i) == 0)) return false;
    }
  }
  return true;
}

int positive_root_count(const CartanType& t) {
  const int n = t.rank;
  switch (t.family) {
    case Family::A: return n * (n + 1) / 2;
    case Family::B:
    case Family::C: return n * n;
    case Family::D: return n * (n - 1);
    case Family::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
    case Family::F: return 24;
    case Family::G: return 6;
  }
  return 0;
}

namespace {

// Simple reflection on a root written in the simple-root basis.
void reflect_root(std::vector<long>& beta, int i, const CartanMatrix& c) {
  long p = 0;
  for (int j = 0; j < c.rank; ++j) p += beta[j] * c(i, j);
  beta[i] -= p;
}

bool positive(const std::vector<long>& beta) {
  bool any = false;
  for (long b : beta) {
    if (b < 0) return false;
    any = any || b != 0;
  }
  return any;
}

}  // namespace

bool is_reduced(const WeylWord& w, const CartanMatrix& c) {
  // s_{i1}...s_{ik} is reduced iff s_{i1}..s_{i(j-1)}(alpha_{ij}) > 0 for every j.
  for (size_t j = 0; j < w.size(); ++j) {
    if (w[j] < 0 || w[j] >= c.rank) return false;
    std::vector<long> beta(c.rank, 0);
    beta[w[j]] = 1;
    for (size_t p = j; p-- > 0;) reflect_root(beta, w[p], c);
    if (!positive(beta)) return false;
  }
  return true;
}

WeylWord w0_reduced_word(const CartanType& t) {
  CartanMatrix c = cartan_matrix(t);
  // Walk rho (fundamental weight coordinates) to -rho; each step lowers
  // the first positive coordinate.
  std::vector<long> lam(c.rank, 1);
  WeylWord w;
  for (;;) {
    int i = -1;
    for (int k = 0; k < c.rank; ++k)
      if (lam[k] > 0) {
        i = k;
        break;
      }
    if (i < 0) break;
    long li = lam[i];
    for (int j = 0; j < c.rank; ++j) lam[j] -= li * c(j, i);
    w.push_back(i);
  }
  return w;
}

int word_length_of_w0(const CartanMatrix& c) {
  int count = 0;
  std::vector<long> lam(c.rank, 1);
  for (int i = 0; i >= 0;) {
    i = -1;
    for (int k = 0; k < c.rank && i < 0; ++k)
      if (lam[k] > 0) i = k;
    if (i < 0) break;
    long li = lam[i];
    for (int j = 0; j < c.rank; ++j) lam[j] -= li * c(j, i);
    ++count;
  }
  return count;
}

WeylWord parse_word(const std::string& s, int rank) {
  WeylWord w;
  bool has_sep = s.find_first_of(", ") != std::string::npos;
  auto push = [&](long v) {
    if (v < 1 || v > rank) throw ParseError("word letter out of range: " + std::to_string(v));
    w.push_back(static_cast<int>(v - 1));
  };
  if (!has_sep) {
    for (char ch : s) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("bad word: " + s);
      push(ch - '0');
    }
    return w;
  }
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    size_t a = tok.find_first_not_of(' '), b = tok.find_last_not_of(' ');
    if (a == std::string::npos) throw ParseError("bad word: " + s);
    tok = tok.substr(a, b - a + 1);
    for (char ch : tok)
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("bad word: " + s);
    push(std::stol(tok));
  }
  return w;
}

std::string format_word(const WeylWord& w) {
  std::string out;
  for (size_t k = 0; k < w.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(w[k] + 1);
  }
  return out;
}

}  // namespace qqb
