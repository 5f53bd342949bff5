#pragma once
// Sign and normalization constants fixed by brute force. `calibrate` recomputes
// them and compares against fixtures/calibration.json.

#include <string>

#include <json.hpp>

namespace gkcurv {

/// <e.a, b> = kMukaiAdjointSign <a, e.b> for every e in T + T* and forms a, b.
inline constexpr int kMukaiAdjointSign = -1;
/// <e1.a, e2.b> + <e2.a, e1.b> = kPolarizationSign 2 <e1,e2> <a, b>.
inline constexpr int kPolarizationSign = -1;
/// tr(J [h1,J] [h2,J]) = kTracePairingConstant times the spinor-side pairing.
inline constexpr long kTracePairingConstant = 16;

/// Re(GR^C) = (kGrComplexNum / kGrComplexDen) GR, measured on the flat and Fubini-Study charts.
inline constexpr long kGrComplexNum = -1;
inline constexpr long kGrComplexDen = 4;

/// Recompute the calibration document. Deterministic: no timing, fixed seeds.
nlohmann::ordered_json compute_calibration();

}  // namespace gkcurv
