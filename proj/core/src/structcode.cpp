#include "xchan/structcode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace xchan {

namespace {

bool legal_coordinate(std::int64_t x, int q) { return x != 0 && x >= -q && x <= q; }

}  // namespace

std::int64_t encode(const ConstellationPoint& p, const ConstellationParam& param) {
  param.validate();
  if (!legal_coordinate(p.u, param.q) || !legal_coordinate(p.v, param.q))
    throw DomainError("encode: point (" + std::to_string(p.u) + "," + std::to_string(p.v) +
                      ") outside constellation with Q=" + std::to_string(param.q));
  return static_cast<std::int64_t>(p.u) + static_cast<std::int64_t>(param.c) * p.v;
}

ConstellationPoint decode(std::int64_t s, const ConstellationParam& param) {
  param.validate();
  // |u| <= Q < c/2, so rounding s/c half away from zero is unambiguous.
  const auto v = static_cast<std::int64_t>(
      std::llround(static_cast<double>(s) / static_cast<double>(param.c)));
  const std::int64_t u = s - static_cast<std::int64_t>(param.c) * v;
  if (!legal_coordinate(u, param.q) || !legal_coordinate(v, param.q))
    throw DecodeError("decode: " + std::to_string(s) + " is not a legal codeword");
  return {static_cast<int>(u), static_cast<int>(v)};
}

double power_constraint(const ConstellationParam& param) {
  param.validate();
  const double cq = static_cast<double>(param.c) * param.q;
  return cq * cq + static_cast<double>(param.q) * param.q;
}

std::vector<std::int64_t> codebook(const ConstellationParam& param) {
  param.validate();
  std::vector<std::int64_t> codes;
  codes.reserve(4u * param.q * param.q);
  for (int v = -param.q; v <= param.q; ++v) {
    if (v == 0) continue;
    for (int u = -param.q; u <= param.q; ++u) {
      if (u == 0) continue;
      codes.push_back(encode({u, v}, param));
    }
  }
  std::sort(codes.begin(), codes.end());
  return codes;
}

double mean_square_code(const ConstellationParam& param) {
  const auto codes = codebook(param);
  double acc = 0.0;
  for (auto s : codes) acc += static_cast<double>(s) * static_cast<double>(s);
  return acc / static_cast<double>(codes.size());
}

std::int64_t nearest_codeword(double value, const ConstellationParam& param) {
  const auto codes = codebook(param);
  auto it = std::lower_bound(codes.begin(), codes.end(), value,
                             [](std::int64_t s, double x) { return static_cast<double>(s) < x; });
  if (it == codes.begin()) return *it;
  if (it == codes.end()) return codes.back();
  const std::int64_t hi = *it;
  const std::int64_t lo = *(it - 1);
  return (value - static_cast<double>(lo) <= static_cast<double>(hi) - value) ? lo : hi;
}

}  // namespace xchan
