#pragma once

namespace symprol {

/// Selects the OpenMP kernel or the serial reference implementation.
/// Both produce identical results; the serial path exists for testing and
/// benchmarking.
enum class Exec { serial, parallel };

/// Work below this many scalar updates stays serial even under Exec::parallel.
inline constexpr long parallel_threshold = 4096;

} // namespace symprol
