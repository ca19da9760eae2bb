#pragma once

#include <optional>
#include <string>
#include <vector>

namespace quditchain::closedform {

/// Closed forms for maximally entangled initial states evolving
/// under isotropic exchange J (field-independent at zero anisotropy).
enum class Formula {
  BiqutritMVW,
  BiqutritMSM,
  BiqutritMSMAniso,  // zero field, Q = d on both sites; needs Q
  BiqutritEta,
  BiqutritMI,
  Chain3Eta,
  Chain4Eta,
  Chain5Eta,
  Chain6Eta,
  BiquartitMVW,
  BiquartitMSM,
  BiquartitEta,
  BiquartitMI,
  Quartit3Eta,  // decimal-truncated coefficients
  BipentitMSM,  // decimal-truncated coefficients
  BipentitMI,   // decimal-truncated coefficients
  BipentitEta,
};

enum class EigenFamily {
  Biqutrit,
  Chain3,
  Chain4,
  Chain5,
  Chain6,
  Biquartit,
  Quartit3,  // decimal-truncated coefficients
  Bipentit,
  /// Negative eigenvalues of the partial transpose.
  BiqutritPartialTranspose,
  BiquartitPartialTranspose,
};

const std::vector<Formula>& all_formulas();
std::string formula_name(Formula f);
Formula formula_from_name(const std::string& name);
std::string family_name(EigenFamily f);
EigenFamily family_from_name(const std::string& name);

/// True for rows tabulated as rounded decimals; compare those at +-2e-3.
bool is_truncated(Formula f);
bool needs_anisotropy(Formula f);

/// Evaluates a catalog formula. Throws InvalidArgument when Q is supplied to
/// a Q-free formula, or missing for BiqutritMSMAniso.
double eval(Formula f, double J, double t, std::optional<double> Q = std::nullopt);

std::vector<double> reduced_eigenvalues(EigenFamily f, double J, double t);

/// sqrt(9 J^2 + 8 Q J + 16 Q^2), the single frequency of the anisotropic
/// bi-qutrit closed form.
double anisotropy_frequency(double J, double Q);

/// -sum l log_base l with 0 log 0 = 0.
double entropy(const std::vector<double>& eigenvalues, double base);

}  // namespace quditchain::closedform
