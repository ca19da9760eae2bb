#include "quditchain/closedform.hpp"

#include <cmath>
#include <initializer_list>
#include <utility>

#include "quditchain/types.hpp"

namespace quditchain::closedform {

namespace {

// (a0 + sum_k a_k cos(n_k J t)) / den with integer coefficients.
struct RationalRow {
  long long den;
  long long constant;
  std::vector<std::pair<long long, double>> terms;  // (coefficient, harmonic)

  double operator()(double J, double t) const {
    double acc = static_cast<double>(constant);
    for (const auto& [a, n] : terms) acc += static_cast<double>(a) * std::cos(n * J * t);
    return acc / static_cast<double>(den);
  }
};

// a0 + sum_k a_k cos(n_k J t) with tabulated decimal coefficients.
struct DecimalRow {
  double constant;
  std::vector<std::pair<double, double>> terms;

  double operator()(double J, double t) const {
    double acc = constant;
    for (const auto& [a, n] : terms) acc += a * std::cos(n * J * t);
    return acc;
  }
};

double root(double radicand) { return std::sqrt(std::max(0.0, radicand)); }

// Reduced one-site eigenvalue rows: (value, multiplicity).
const RationalRow kQutrit12{27, 5, {{4, 3}}};
const RationalRow kQutrit3{27, 17, {{-8, 3}}};
const RationalRow kChain3R12{75, 29, {{-4, 5}}};
const RationalRow kChain3R3{75, 17, {{8, 5}}};
const RationalRow kChain4R12{2205, 905, {{-98, 3}, {-72, 7}}};
const RationalRow kChain4R3{2205, 395, {{196, 3}, {144, 7}}};
const RationalRow kChain5R12{42525, 16919, {{-1944, 5}, {-800, 9}}};
const RationalRow kChain5R3{42525, 8687, {{3888, 5}, {1600, 9}}};
const RationalRow kChain6R12{53361, 21977, {{-1694, 3}, {-1936, 7}, {-560, 11}}};
const RationalRow kChain6R3{53361, 9407, {{3388, 3}, {3872, 7}, {1120, 11}}};
const RationalRow kQuartit12{100, 13, {{12, 5}}};
const RationalRow kQuartit34{100, 37, {{-12, 5}}};
const RationalRow kPentit12{6125, 1173, {{-140, 3}, {640, 7}, {-448, 10}}};
const RationalRow kPentit34{6125, 513, {{280, 3}, {320, 7}, {112, 10}}};
const RationalRow kPentit5{6125, 2753, {{-280, 3}, {-1920, 7}, {672, 10}}};
const DecimalRow kQuartit3R12{0.141, {{0.068, 2.5}, {0.04, 8.0}}};
const DecimalRow kQuartit3R34{0.359, {{-0.068, 2.5}, {-0.04, 8.0}}};

// Squared-measure rows.
const RationalRow kBiqutritMSM2{6561, 4457, {{2776, 3}, {-632, 6}, {-56, 9}, {16, 12}}};
const RationalRow kBiqutritMI2{81, 57, {{32, 3}, {-8, 6}}};
const RationalRow kBiquartitMSM2{
    1953125, 1803365, {{191616, 5}, {-35808, 10}, {-6912, 15}, {864, 20}}};  // 625^2 * 5
const RationalRow kBiquartitMI2{625, 553, {{96, 5}, {-24, 10}}};
const DecimalRow kBipentitMSM2{
    0.802,
    {{0.106, 3}, {-0.019, 4}, {0.242, 7}, {-0.098, 10}, {-0.088, 14}, {0.067, 17}, {-0.014, 20}}};
const DecimalRow kBipentitMI2{0.791,
                              {{0.114, 3},
                               {-0.018, 4},
                               {-0.005, 6},
                               {0.230, 7},
                               {-0.079, 10},
                               {-0.079, 14},
                               {0.060, 17},
                               {-0.015, 20}}};

// Partial-transpose eigenvalue radicands.
const RationalRow kBiqutritPtRad{729, 69, {{28, 3}, {-16, 6}}};         // eps1 = eps2 = -sqrt
const RationalRow kBiquartitPtRad{10000, 409, {{288, 5}, {-72, 10}}};  // lambda2..5 = -sqrt

std::vector<double> expand(double J, double t,
                           std::initializer_list<std::pair<const RationalRow*, int>> rows) {
  std::vector<double> out;
  for (const auto& [row, mult] : rows)
    for (int i = 0; i < mult; ++i) out.push_back((*row)(J, t));
  return out;
}

double biqutrit_mSM_aniso(double J, double Q, double t) {
  const double w2 = 9.0 * J * J + 8.0 * Q * J + 16.0 * Q * Q;
  if (!(w2 > 0.0))
    throw InvalidArgument("anisotropic closed form needs (J, Q) != (0, 0)");
  const double w = std::sqrt(w2);
  const double J2 = J * J;
  const double Q2 = Q * Q;
  const double jq = J + 2.0 * Q;
  const double q0 = 4457 * std::pow(J, 8) + 11616 * Q * std::pow(J, 7) +
                    47392 * Q2 * std::pow(J, 6) + 85888 * std::pow(Q, 3) * std::pow(J, 5) +
                    163072 * std::pow(Q, 4) * std::pow(J, 4) +
                    194560 * std::pow(Q, 5) * std::pow(J, 3) + 221184 * std::pow(Q, 6) * J2 +
                    131072 * std::pow(Q, 7) * J + 65536 * std::pow(Q, 8);
  const double q1 = 8 * J2 * jq * jq *
                    (347 * J2 * J2 + 518 * Q * J2 * J + 1440 * Q2 * J2 + 1504 * Q2 * Q * J +
                     1024 * Q2 * Q2);
  const double q2 = -8 * J2 * jq * jq *
                    (79 * J2 * J2 + 76 * Q * J2 * J + 320 * Q2 * J2 + 448 * Q2 * Q * J +
                     256 * Q2 * Q2);
  const double q3 = -8 * J2 * J * (7 * J - 4 * Q) * jq * jq * jq * (J + 4 * Q);
  const double q4 = 16 * J2 * J2 * std::pow(jq, 4);
  const double radicand = q0 + q1 * std::cos(w * t) + q2 * std::cos(2 * w * t) +
                          q3 * std::cos(3 * w * t) + q4 * std::cos(4 * w * t);
  return root(radicand) / (w2 * w2);
}

struct NamedFormula {
  Formula f;
  const char* name;
};

constexpr NamedFormula kFormulaNames[] = {
    {Formula::BiqutritMVW, "biqutrit_mVW"},     {Formula::BiqutritMSM, "biqutrit_mSM"},
    {Formula::BiqutritMSMAniso, "biqutrit_mSM_aniso"},
    {Formula::BiqutritEta, "biqutrit_eta"},     {Formula::BiqutritMI, "biqutrit_mI"},
    {Formula::Chain3Eta, "chain3_eta"},         {Formula::Chain4Eta, "chain4_eta"},
    {Formula::Chain5Eta, "chain5_eta"},         {Formula::Chain6Eta, "chain6_eta"},
    {Formula::BiquartitMVW, "biquartit_mVW"},   {Formula::BiquartitMSM, "biquartit_mSM"},
    {Formula::BiquartitEta, "biquartit_eta"},   {Formula::BiquartitMI, "biquartit_mI"},
    {Formula::Quartit3Eta, "quartit3_eta"},     {Formula::BipentitMSM, "bipentit_mSM"},
    {Formula::BipentitMI, "bipentit_mI"},       {Formula::BipentitEta, "bipentit_eta"},
};

struct NamedFamily {
  EigenFamily f;
  const char* name;
};

constexpr NamedFamily kFamilyNames[] = {
    {EigenFamily::Biqutrit, "biqutrit"},
    {EigenFamily::Chain3, "chain3"},
    {EigenFamily::Chain4, "chain4"},
    {EigenFamily::Chain5, "chain5"},
    {EigenFamily::Chain6, "chain6"},
    {EigenFamily::Biquartit, "biquartit"},
    {EigenFamily::Quartit3, "quartit3"},
    {EigenFamily::Bipentit, "bipentit"},
    {EigenFamily::BiqutritPartialTranspose, "biqutrit_pt"},
    {EigenFamily::BiquartitPartialTranspose, "biquartit_pt"},
};

double sum_abs(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

}  // namespace

const std::vector<Formula>& all_formulas() {
  static const std::vector<Formula> all = [] {
    std::vector<Formula> v;
    for (const auto& nf : kFormulaNames) v.push_back(nf.f);
    return v;
  }();
  return all;
}

std::string formula_name(Formula f) {
  for (const auto& nf : kFormulaNames)
    if (nf.f == f) return nf.name;
  throw InvalidArgument("unknown formula");
}

Formula formula_from_name(const std::string& name) {
  for (const auto& nf : kFormulaNames)
    if (name == nf.name) return nf.f;
  throw InvalidArgument("unknown closed-form identifier '" + name + "'");
}

std::string family_name(EigenFamily f) {
  for (const auto& nf : kFamilyNames)
    if (nf.f == f) return nf.name;
  throw InvalidArgument("unknown eigenvalue family");
}

EigenFamily family_from_name(const std::string& name) {
  for (const auto& nf : kFamilyNames)
    if (name == nf.name) return nf.f;
  throw InvalidArgument("unknown eigenvalue family '" + name + "'");
}

bool is_truncated(Formula f) {
  return f == Formula::Quartit3Eta || f == Formula::BipentitMSM || f == Formula::BipentitMI;
}

bool needs_anisotropy(Formula f) { return f == Formula::BiqutritMSMAniso; }

double anisotropy_frequency(double J, double Q) {
  return std::sqrt(9.0 * J * J + 8.0 * Q * J + 16.0 * Q * Q);
}

double entropy(const std::vector<double>& eigenvalues, double base) {
  double s = 0.0;
  for (double l : eigenvalues)
    if (l > 0.0) s -= l * std::log(l);
  return s / std::log(base);
}

std::vector<double> reduced_eigenvalues(EigenFamily f, double J, double t) {
  switch (f) {
    case EigenFamily::Biqutrit:
      return expand(J, t, {{&kQutrit12, 2}, {&kQutrit3, 1}});
    case EigenFamily::Chain3:
      return expand(J, t, {{&kChain3R12, 2}, {&kChain3R3, 1}});
    case EigenFamily::Chain4:
      return expand(J, t, {{&kChain4R12, 2}, {&kChain4R3, 1}});
    case EigenFamily::Chain5:
      return expand(J, t, {{&kChain5R12, 2}, {&kChain5R3, 1}});
    case EigenFamily::Chain6:
      return expand(J, t, {{&kChain6R12, 2}, {&kChain6R3, 1}});
    case EigenFamily::Biquartit:
      return expand(J, t, {{&kQuartit12, 2}, {&kQuartit34, 2}});
    case EigenFamily::Quartit3: {
      const double r12 = kQuartit3R12(J, t);
      const double r34 = kQuartit3R34(J, t);
      return {r12, r12, r34, r34};
    }
    case EigenFamily::Bipentit:
      return expand(J, t, {{&kPentit12, 2}, {&kPentit34, 2}, {&kPentit5, 1}});
    case EigenFamily::BiqutritPartialTranspose: {
      const double e12 = -root(kBiqutritPtRad(J, t));
      return {e12, e12, -kQutrit12(J, t)};
    }
    case EigenFamily::BiquartitPartialTranspose: {
      const double l25 = -root(kBiquartitPtRad(J, t));
      const double x = std::cos(5.0 * J * t);
      return {(-13.0 - 12.0 * x) / 100.0, l25, l25, l25, l25, (-37.0 + 12.0 * x) / 100.0};
    }
  }
  throw InvalidArgument("unknown eigenvalue family");
}

double eval(Formula f, double J, double t, std::optional<double> Q) {
  if (needs_anisotropy(f)) {
    if (!Q) throw InvalidArgument(formula_name(f) + " needs the anisotropy constant Q");
    return biqutrit_mSM_aniso(J, *Q, t);
  }
  if (Q) throw InvalidArgument(formula_name(f) + " does not take an anisotropy constant");

  switch (f) {
    case Formula::BiqutritMVW:
      return sum_abs(reduced_eigenvalues(EigenFamily::BiqutritPartialTranspose, J, t));
    case Formula::BiqutritMSM:
      return root(kBiqutritMSM2(J, t));
    case Formula::BiqutritEta:
      return entropy(reduced_eigenvalues(EigenFamily::Biqutrit, J, t), 3.0);
    case Formula::BiqutritMI:
      return root(kBiqutritMI2(J, t));
    case Formula::Chain3Eta:
      return entropy(reduced_eigenvalues(EigenFamily::Chain3, J, t), 3.0);
    case Formula::Chain4Eta:
      return entropy(reduced_eigenvalues(EigenFamily::Chain4, J, t), 3.0);
    case Formula::Chain5Eta:
      return entropy(reduced_eigenvalues(EigenFamily::Chain5, J, t), 3.0);
    case Formula::Chain6Eta:
      return entropy(reduced_eigenvalues(EigenFamily::Chain6, J, t), 3.0);
    case Formula::BiquartitMVW:
      return sum_abs(reduced_eigenvalues(EigenFamily::BiquartitPartialTranspose, J, t));
    case Formula::BiquartitMSM:
      return root(kBiquartitMSM2(J, t));
    case Formula::BiquartitEta:
      return entropy(reduced_eigenvalues(EigenFamily::Biquartit, J, t), 4.0);
    case Formula::BiquartitMI:
      return root(kBiquartitMI2(J, t));
    case Formula::Quartit3Eta:
      return entropy(reduced_eigenvalues(EigenFamily::Quartit3, J, t), 4.0);
    case Formula::BipentitMSM:
      return root(kBipentitMSM2(J, t));
    case Formula::BipentitMI:
      return root(kBipentitMI2(J, t));
    case Formula::BipentitEta:
      return entropy(reduced_eigenvalues(EigenFamily::Bipentit, J, t), 5.0);
    case Formula::BiqutritMSMAniso:
      break;
  }
  throw InvalidArgument("unknown formula");
}

}  // namespace quditchain::closedform
