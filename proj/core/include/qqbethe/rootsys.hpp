#pragma once

#include <string>
#include <vector>

namespace qqb {

// Node labels follow Bourbaki. All library indices are 0-based; the command
// line and file formats use 1-based letters for Weyl words.
enum class Family { A, B, C, D, E, F, G };

struct CartanType {
  Family family = Family::A;
  int rank = 1;

  std::string name() const;  // e.g. "B2"
  bool simply_laced() const;
  friend bool operator==(const CartanType&, const CartanType&) = default;
};

CartanType make_type(char family, int rank);
CartanType parse_type(const std::string& s);
bool valid_type(Family f, int rank);
char family_letter(Family f);

// a[i][j] = <alpha_j, coroot_i>
struct CartanMatrix {
  int rank = 0;
  std::vector<int> a;

  int operator()(int i, int j) const { return a[i * rank + j]; }
  int& operator()(int i, int j) { return a[i * rank + j]; }
  friend bool operator==(const CartanMatrix&, const CartanMatrix&) = default;
};

CartanMatrix cartan_matrix(const CartanType& t);
bool valid_cartan(const CartanMatrix& c);
int positive_root_count(const CartanType& t);

// Twist Z^H = sum zeta_i coroot_i. The pairings xi_i are always recomputed.
template <class S>
struct Twist {
  std::vector<S> zeta;
};

template <class S>
S pairing(int i, const Twist<S>& z, const CartanMatrix& c) {
  S xi = S(0L);
  for (int j = 0; j < c.rank; ++j)
    if (c(j, i) != 0) xi += S(long(c(j, i))) * z.zeta[j];
  return xi;
}

template <class S>
std::vector<S> pairings(const Twist<S>& z, const CartanMatrix& c) {
  std::vector<S> out;
  out.reserve(c.rank);
  for (int i = 0; i < c.rank; ++i) out.push_back(pairing(i, z, c));
  return out;
}

template <class S>
Twist<S> reflect_twist(int i, const Twist<S>& z, const CartanMatrix& c) {
  Twist<S> out = z;
  out.zeta[i] -= pairing(i, z, c);
  return out;
}

using WeylWord = std::vector<int>;

WeylWord w0_reduced_word(const CartanType& t);
bool is_reduced(const WeylWord& w, const CartanMatrix& c);
int word_length_of_w0(const CartanMatrix& c);

// "1,2,1" or "121" (single-digit letters) -> 0-based letters.
WeylWord parse_word(const std::string& s, int rank);
std::string format_word(const WeylWord& w);

}  // namespace qqb
