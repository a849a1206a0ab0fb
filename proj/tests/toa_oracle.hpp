#pragma once

// Independent time-on-air reference, written against the SX127x datasheet
// description before the library implementation and kept deliberately
// separate from it: symbol counts are assembled in exact quarter-symbol
// integer arithmetic and only converted to seconds at the end.

#include <cmath>
#include <cstdint>

namespace toa_oracle {

struct Setup {
  int sf = 7;
  long bandwidth_hz = 125000;
  int cr_k = 1;             // coding rate 4/(4+k)
  int preamble = 8;
  bool explicit_header = true;
  bool crc = true;
};

// ceil(a / b) for a possibly negative numerator and positive denominator.
inline long ceil_div(long a, long b) {
  return a > 0 ? (a + b - 1) / b : 0;
}

inline long payload_symbols(const Setup& s, int payload_bytes) {
  // Low-data-rate optimization is on when a symbol lasts longer than 16 ms,
  // i.e. 2^SF * 1000 > 16 * BW.
  const bool ldro = (static_cast<long long>(1) << s.sf) * 1000LL > 16LL * s.bandwidth_hz;
  const long numerator = 8L * payload_bytes - 4L * s.sf + 28L + (s.crc ? 16L : 0L) -
                         (s.explicit_header ? 0L : 20L);
  const long denominator = 4L * (s.sf - (ldro ? 2 : 0));
  return 8L + ceil_div(numerator, denominator) * (s.cr_k + 4L);
}

inline long double frame_seconds(const Setup& s, int payload_bytes) {
  // Quarter symbols: preamble contributes 4*preamble + 17 (the 4.25 sync
  // word), the payload 4*N_payload.
  const long quarter_symbols = 4L * s.preamble + 17L + 4L * payload_symbols(s, payload_bytes);
  const long double symbol_s =
      static_cast<long double>(1ULL << s.sf) / static_cast<long double>(s.bandwidth_hz);
  return static_cast<long double>(quarter_symbols) * symbol_s / 4.0L;
}

}  // namespace toa_oracle
