#include "bohr/special.hpp"

#include "bohr/errors.hpp"

#include <cmath>

namespace bohr {

long double hurwitz_zeta(long double s, long double a)
{
  if (!(s > 1.0L) || !(a > 0.0L))
    throw DomainError("hurwitz_zeta needs s > 1 and a > 0");
  // B_{2k} / (2k)!
  static constexpr long double kB[] = {
      1.0L / 12.0L,
      -1.0L / 720.0L,
      1.0L / 30240.0L,
      -1.0L / 1209600.0L,
      1.0L / 47900160.0L,
      -691.0L / 1307674368000.0L,
      1.0L / 74724249600.0L,
      -3617.0L / 10670622842880000.0L,
  };
  long double head = 0.0L;
  long double x = a;
  while (x < 16.0L) {
    head += std::pow(x, -s);
    x += 1.0L;
  }
  const long double xs = std::pow(x, -s);
  long double tail = x * xs / (s - 1.0L) + 0.5L * xs;
  // Rising factorial s (s+1) ... (s+2k-2) times x^{-s-2k+1}.
  long double rising = s;
  long double power = xs / x;
  const long double inv_x2 = 1.0L / (x * x);
  for (int k = 0; k < 8; ++k) {
    tail += kB[k] * rising * power;
    rising *= (s + 2 * k + 1) * (s + 2 * k + 2);
    power *= inv_x2;
  }
  return head + tail;
}

} // namespace bohr
