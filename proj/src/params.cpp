#include "wgnc/params.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "wgnc/polybasis.hpp"

namespace wgnc {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::WG1: return "WG-I";
    case Variant::WG2: return "WG-II";
    case Variant::WG3: return "WG-III";
    case Variant::Custom: return "custom";
  }
  return "?";
}

Variant parse_variant(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (c != '-' && c != '_' && c != ' ') t.push_back(static_cast<char>(std::tolower(c)));
  }
  if (t == "wg1" || t == "wgi" || t == "1" || t == "i") return Variant::WG1;
  if (t == "wg2" || t == "wgii" || t == "2" || t == "ii") return Variant::WG2;
  if (t == "wg3" || t == "wgiii" || t == "3" || t == "iii") return Variant::WG3;
  throw std::invalid_argument("unknown variant '" + text + "' (expected wg1, wg2 or wg3)");
}

double MethodParams::stabilization_length(double area, double diameter) const {
  return stabilization == StabilizationScale::CellSize ? std::sqrt(2.0 * area) : diameter;
}

void MethodParams::validate() const {
  if (k < 1) throw std::invalid_argument("k must be >= 1, got " + std::to_string(k));
  if (l != k && l != k - 1) {
    throw std::invalid_argument("l must be k or k-1, got l=" + std::to_string(l));
  }
  if (m < k - 1 || m > l) {
    throw std::invalid_argument("m must satisfy k-1 <= m <= l, got m=" + std::to_string(m));
  }
  if (quad_boost < 0) throw std::invalid_argument("quad_boost must be >= 0");
  // Products in the trilinear forms need basis degree up to 2k inside the rules.
  if (k + 1 > kMaxBasisDegree) {
    throw std::invalid_argument("k=" + std::to_string(k) + " exceeds the supported degree");
  }
}

MethodParams MethodParams::from_variant(int k, Variant v) {
  MethodParams p;
  p.k = k;
  p.variant = v;
  switch (v) {
    case Variant::WG1: p.l = k; p.m = k; break;
    case Variant::WG2: p.l = k; p.m = k - 1; break;
    case Variant::WG3: p.l = k - 1; p.m = k - 1; break;
    case Variant::Custom:
      throw std::invalid_argument("from_variant: use MethodParams::custom for explicit degrees");
  }
  p.validate();
  return p;
}

MethodParams MethodParams::custom(int k, int l, int m) {
  MethodParams p;
  p.k = k;
  p.l = l;
  p.m = m;
  p.variant = Variant::Custom;
  if (l == k && m == k) p.variant = Variant::WG1;
  else if (l == k && m == k - 1) p.variant = Variant::WG2;
  else if (l == k - 1 && m == k - 1) p.variant = Variant::WG3;
  p.validate();
  return p;
}

}  // namespace wgnc
