#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>

namespace sipg {

// Polynomial with ascending coefficients evaluated by Horner's rule.
inline double horner(double x, std::initializer_list<double> coeffs) {
  double acc = 0.0;
  for (auto it = coeffs.end(); it != coeffs.begin();) acc = acc * x + *--it;
  return acc;
}

// horner(g, coeffs) / max(g, 1)^deg, evaluated in 1/g for g > 1 so that large
// g does not cancel catastrophically. Requires deg >= coeffs.size() - 1.
inline double gpoly(double g, int deg, std::initializer_list<double> coeffs) {
  if (g <= 1.0) return horner(g, coeffs);
  const double ig = 1.0 / g;
  double acc = 0.0;
  for (double c : coeffs) acc = acc * ig + c;
  return acc * std::pow(ig, deg - static_cast<int>(coeffs.size()) + 1);
}

// Eigenvalue coefficients of the reaction-diffusion two-grid operator with the
// point smoother; c[1..12], c[0] unused. With x = c_k:
//   lambda = (c1 + c2 x + c3 x^2 +- sqrt(c4 + c5 x + ... + c9 x^5)) / (c10 + c11 x + c12 x^2)
// For g > 1 all coefficients carry a common factor g^-4 (g^-8 under the root).
inline std::array<double, 13> rd_point_coefficients(double a, double d, double g) {
  const double a2 = a * a;
  std::array<double, 13> c{};
  c[1] = gpoly(g, 4, {128.0, horner(d, {0.0, 1280.0}), horner(d, {-1248.0, 2688.0, 3072.0}), horner(d, {0.0, -5184.0, 11520.0}), horner(d, {864.0, -5184.0, 6912.0})})
      + a * gpoly(g, 4, {-80.0, horner(d, {0.0, -992.0}), horner(d, {2208.0, -3744.0, -2544.0}), horner(d, {288.0, 7776.0, -14400.0}), horner(d, {-864.0, 6912.0, -8640.0})});
  c[2] = gpoly(g, 4, {0.0, horner(d, {-384.0, 256.0}), horner(d, {0.0, -2688.0, 1536.0}), horner(d, {3456.0, -9216.0, 2304.0}), horner(d, {0.0, 3456.0, -6912.0})})
      + a * gpoly(g, 4, {0.0, horner(d, {240.0, -160.0}), horner(d, {1392.0, 480.0, -960.0}), horner(d, {-3168.0, 12096.0, -5760.0}), horner(d, {0.0, -3456.0, 6912.0})});
  c[3] = gpoly(g, 4, {0.0, 0.0, 96.0, horner(d, {0.0, 576.0}), horner(d, {-864.0, 1728.0})})
      + a * gpoly(g, 4, {0.0, 0.0, horner(d, {144.0, -192.0, 48.0}), horner(d, {-576.0, 864.0, -576.0}), horner(d, {864.0, -3456.0, 1728.0})});
  c[4] = a2 * gpoly(g, 8, {256.0, horner(d, {-9216.0, 8192.0}), horner(d, {195072.0, -276480.0, 100864.0}), horner(d, {734976.0, 856320.0, -1373184.0, 353280.0}), horner(d, {2062080.0, 2062080.0, 1833984.0, -2442240.0, 278784.0}), horner(d, {359424.0, 13906944.0, -8543232.0, 8487936.0, -3041280.0}), horner(d, {-829440.0, 10368000.0, 8957952.0, -9123840.0, 6469632.0}), horner(d, {-248832.0, 248832.0, 18911232.0, -18911232.0, 9953280.0}), horner(d, {0.0, -746496.0, 5971968.0, -5971968.0, 2985984.0})});
  c[5] = a2 * gpoly(g, 8, {0.0, horner(d, {-10752.0, 4096.0}), horner(d, {201216.0, -313344.0, 83968.0}), horner(d, {-292608.0, 2492160.0, -2339328.0, 457728.0}), horner(d, {126720.0, -2449152.0, 10243584.0, -5981184.0, 608256.0}), horner(d, {-4810752.0, 12690432.0, -20542464.0, 25712640.0, -6967296.0}), horner(d, {-1575936.0, -12773376.0, 25049088.0, -25214976.0, 17915904.0}), horner(d, {1741824.0, -17169408.0, 20901888.0, -21897216.0, 11943936.0}), horner(d, {746496.0, -3732480.0})});
  c[6] = a2 * gpoly(g, 8, {0.0, 0.0, horner(d, {2304.0, 0.0, -512.0}), horner(d, {-988416.0, 1552128.0, -685056.0, 89088.0}), horner(d, {105984.0, -8808192.0, 11828736.0, -4174848.0, 382464.0}), horner(d, {-663552.0, -1852416.0, -19491840.0, 23003136.0, -4866048.0}), horner(d, {8792064.0, -35168256.0, 35997696.0, -36163584.0, 16920576.0}), horner(d, {4976640.0, -7464960.0, -10948608.0, 11943936.0, -7962624.0}), horner(d, {0.0, 4478976.0, -11943936.0, 11943936.0, -5971968.0})});
  c[7] = a2 * gpoly(g, 8, {0.0, 0.0, 0.0, horner(d, {76032.0, -145152.0, 84480.0, -15360.0}), horner(d, {2080512.0, -4020480.0, 2585088.0, -654336.0, 55296.0}), horner(d, {3704832.0, 1907712.0, -10202112.0, 6137856.0, -995328.0}), horner(d, {7382016.0, -10450944.0, 22063104.0, -22560768.0, 5971968.0}), horner(d, {-1990656.0, 17418240.0, -20901888.0, 21897216.0, -11943936.0}), horner(d, {-1492992.0, 4478976.0})});
  c[8] = a2 * gpoly(g, 8, {0.0, 0.0, 0.0, 0.0, horner(d, {20736.0, -55296.0, 50688.0, -18432.0, 2304.0}), horner(d, {-580608.0, 1216512.0, -940032.0, 359424.0, -55296.0}), horner(d, {-1824768.0, 248832.0, 3483648.0, -2488320.0, 497664.0}), horner(d, {-4727808.0, 7216128.0, -7962624.0, 6967296.0, -1990656.0}), horner(d, {0.0, -3732480.0, 5971968.0, -5971968.0, 2985984.0})});
  c[9] = a2 * gpoly(g, 8, {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, horner(d, {248832.0, -248832.0}), horner(d, {746496.0, -746496.0})});
  c[10] = gpoly(g, 4, {128.0, horner(d, {0.0, 1280.0}), horner(d, {-1248.0, 2688.0, 3072.0}), horner(d, {0.0, -5184.0, 11520.0}), horner(d, {864.0, -5184.0, 6912.0})});
  c[11] = gpoly(g, 4, {0.0, horner(d, {-384.0, 256.0}), horner(d, {0.0, -2688.0, 1536.0}), horner(d, {3456.0, -9216.0, 2304.0}), horner(d, {0.0, 3456.0, -6912.0})});
  c[12] = gpoly(g, 4, {0.0, 0.0, 96.0, horner(d, {0.0, 576.0}), horner(d, {-864.0, 1728.0})});
  return c;
}

// Same for the cell smoother; c[1..11], c[0] unused:
//   lambda = (c1 + c2 x + c3 x^2 +- sqrt(c4 + ... + c8 x^4)) / (c9 + c10 x + c11 x^2)
inline std::array<double, 12> rd_cell_coefficients(double a, double d, double g) {
  const double gs = std::min(g, 1.0);
  const double s = 1024.0 * a * a * gs * gs;
  std::array<double, 12> c{};
  c[1] = gpoly(g, 4, {64.0, horner(d, {0.0, 768.0}), horner(d, {-48.0, 192.0, 2816.0}), horner(d, {0.0, -384.0, 1536.0, 3072.0}), horner(d, {0.0, 0.0, -576.0, 2304.0})})
      + a * gpoly(g, 4, {-64.0, horner(d, {0.0, -800.0}), horner(d, {960.0, -1344.0, -2720.0}), horner(d, {576.0, 1536.0, -3456.0, -3072.0}), horner(d, {0.0, 1152.0, -576.0, -2304.0})});
  c[2] = gpoly(g, 4, {0.0, horner(d, {-192.0, 128.0}), horner(d, {0.0, -1728.0, 1024.0}), horner(d, {0.0, 0.0, -3840.0, 1536.0}), horner(d, {0.0, 0.0, 0.0, -2304.0})})
      + a * gpoly(g, 4, {0.0, horner(d, {96.0, -64.0}), horner(d, {192.0, 1152.0, -736.0}), horner(d, {-576.0, 960.0, 3456.0, -1536.0}), horner(d, {0.0, -1152.0, 1152.0, 2304.0})});
  c[3] = gpoly(g, 4, {0.0, 0.0, 48.0, horner(d, {0.0, 384.0}), horner(d, {0.0, 0.0, 576.0})})
      + a * gpoly(g, 4, {0.0, 0.0, 0.0, horner(d, {0.0, -192.0}), horner(d, {0.0, 0.0, -576.0})});
  c[4] = s * gpoly(g, 6, {horner(d, {219.0, -228.0, 61.0}), horner(d, {-72.0, 2931.0, -3096.0, 858.0}), horner(d, {504.0, -1116.0, 15018.0, -16140.0, 4665.0}), horner(d, {1080.0, -2340.0, 7524.0, 23292.0, -33624.0, 10944.0}), horner(d, {432.0, 2592.0, -12384.0, 41760.0, -16236.0, -17136.0, 9216.0}), horner(d, {0.0, 1836.0, -3672.0, -864.0, 36720.0, -43200.0, 13824.0}), horner(d, {0.0, 0.0, 1944.0, -9072.0, 21060.0, -18144.0, 5184.0})});
  c[5] = s * gpoly(g, 6, {horner(d, {216.0, -222.0, 56.0}), horner(d, {-756.0, 3960.0, -3498.0, 834.0}), horner(d, {576.0, -8028.0, 24900.0, -19836.0, 4518.0}), horner(d, {-432.0, 2772.0, -26532.0, 65916.0, -48960.0, 10656.0}), horner(d, {-864.0, 1944.0, -4752.0, -23616.0, 65988.0, -46944.0, 9216.0}), horner(d, {0.0, -3672.0, 14040.0, -34776.0, 23760.0, 5184.0, -6912.0}), horner(d, {0.0, 0.0, -3888.0, 16848.0, -37584.0, 33696.0, -10368.0})});
  c[6] = s * gpoly(g, 6, {horner(d, {6.0, -12.0, 4.0}), horner(d, {-684.0, 1209.0, -762.0, 156.0}), horner(d, {36.0, -6228.0, 10038.0, -5640.0, 1041.0}), horner(d, {-1080.0, 3636.0, -25236.0, 33012.0, -15912.0, 2592.0}), horner(d, {324.0, -6480.0, 19476.0, -54720.0, 52380.0, -18864.0, 2304.0}), horner(d, {0.0, 1296.0, -11880.0, 30888.0, -54000.0, 36288.0, -6912.0}), horner(d, {0.0, 0.0, 1296.0, -6480.0, 12312.0, -12960.0, 5184.0})});
  c[7] = s * gpoly(g, 6, {0.0, 0.0, horner(d, {180.0, -180.0, 48.0}), horner(d, {432.0, 1116.0, -1548.0, 468.0}), horner(d, {216.0, 1944.0, 2808.0, -4896.0, 1548.0}), horner(d, {0.0, 1080.0, 1512.0, 4536.0, -6480.0, 1728.0}), horner(d, {0.0, 0.0, 1296.0, -1296.0, 3888.0, -2592.0})});
  c[8] = s * gpoly(g, 6, {0.0, 0.0, 0.0, 0.0, horner(d, {-108.0, 0.0, 36.0}), horner(d, {0.0, -540.0, 0.0, 216.0}), horner(d, {0.0, 0.0, -648.0, 0.0, 324.0})});
  c[9] = gpoly(g, 4, {64.0, horner(d, {0.0, 768.0}), horner(d, {-48.0, 192.0, 2816.0}), horner(d, {0.0, -384.0, 1536.0, 3072.0}), horner(d, {0.0, 0.0, -576.0, 2304.0})});
  c[10] = gpoly(g, 4, {0.0, horner(d, {-192.0, 128.0}), horner(d, {0.0, -1728.0, 1024.0}), horner(d, {0.0, 0.0, -3840.0, 1536.0}), horner(d, {0.0, 0.0, 0.0, -2304.0})});
  c[11] = gpoly(g, 4, {0.0, 0.0, 48.0, horner(d, {0.0, 384.0}), horner(d, {0.0, 0.0, 576.0})});
  return c;
}

// The same rational functions re-expanded in y = c_k - 1, with the same index
// layout. Leading powers of g cancel exactly at y = 0 in this basis, which keeps
// evaluation near c_k = 1 accurate for large g.
inline std::array<double, 13> rd_point_coefficients_shifted(double a, double d, double g) {
  const double a2 = a * a;
  std::array<double, 13> c{};
  c[1] = gpoly(g, 4, {128.0, horner(d, {-384.0, 1536.0}), horner(d, {-1152.0, 0.0, 4608.0}), horner(d, {3456.0, -13824.0, 13824.0})})
      + a * gpoly(g, 4, {-80.0, horner(d, {240.0, -1152.0}), horner(d, {3744.0, -3456.0, -3456.0}), horner(d, {-3456.0, 20736.0, -20736.0})});
  c[2] = gpoly(g, 4, {0.0, horner(d, {-384.0, 256.0}), horner(d, {192.0, -2688.0, 1536.0}), horner(d, {3456.0, -8064.0, 2304.0}), horner(d, {-1728.0, 6912.0, -6912.0})})
      + a * gpoly(g, 4, {0.0, horner(d, {240.0, -160.0}), horner(d, {1680.0, 96.0, -864.0}), horner(d, {-4320.0, 13824.0, -6912.0}), horner(d, {1728.0, -10368.0, 10368.0})});
  c[3] = gpoly(g, 4, {0.0, 0.0, 96.0, horner(d, {0.0, 576.0}), horner(d, {-864.0, 1728.0})})
      + a * gpoly(g, 4, {0.0, 0.0, horner(d, {144.0, -192.0, 48.0}), horner(d, {-576.0, 864.0, -576.0}), horner(d, {864.0, -3456.0, 1728.0})});
  c[4] = a2 * gpoly(g, 8, {256.0, horner(d, {-19968.0, 12288.0}), horner(d, {398592.0, -589824.0, 184320.0}), horner(d, {-470016.0, 4755456.0, -4313088.0, 884736.0}), horner(d, {4396032.0, -13271040.0, 26542080.0, -13271040.0, 1327104.0}), horner(d, {-1990656.0, 27869184.0, -59719680.0, 63700992.0, -15925248.0}), horner(d, {11943936.0, -47775744.0, 95551488.0, -95551488.0, 47775744.0})});
  c[5] = a2 * gpoly(g, 8, {0.0, horner(d, {-10752.0, 4096.0}), horner(d, {205824.0, -313344.0, 82944.0}), horner(d, {-2041344.0, 5160960.0, -3456000.0, 589824.0}), horner(d, {6663168.0, -32348160.0, 41859072.0, -16367616.0, 1548288.0}), horner(d, {2654208.0, 19574784.0, -93892608.0, 91570176.0, -19906560.0}), horner(d, {30855168.0, -113467392.0, 177168384.0, -175177728.0, 71663616.0}), horner(d, {-11943936.0, 47775744.0, -95551488.0, 95551488.0, -47775744.0})});
  c[6] = a2 * gpoly(g, 8, {0.0, 0.0, horner(d, {2304.0, 0.0, -512.0}), horner(d, {-760320.0, 1116672.0, -431616.0, 43008.0}), horner(d, {6471936.0, -21201408.0, 19888128.0, -6248448.0, 562176.0}), horner(d, {6967296.0, 11169792.0, -55738368.0, 43573248.0, -8183808.0}), horner(d, {19989504.0, -65028096.0, 123088896.0, -118775808.0, 37822464.0}), horner(d, {-26873856.0, 85598208.0, -121430016.0, 119439360.0, -55738368.0}), horner(d, {2985984.0, -11943936.0, 23887872.0, -23887872.0, 11943936.0})});
  c[7] = a2 * gpoly(g, 8, {0.0, 0.0, 0.0, horner(d, {76032.0, -145152.0, 84480.0, -15360.0}), horner(d, {2163456.0, -4241664.0, 2787840.0, -728064.0, 64512.0}), horner(d, {1382400.0, 6773760.0, -13962240.0, 7575552.0, -1216512.0}), horner(d, {82944.0, -9455616.0, 35997696.0, -32514048.0, 7962624.0}), horner(d, {-18413568.0, 43794432.0, -52752384.0, 49766400.0, -19906560.0}), horner(d, {5971968.0, -17915904.0, 23887872.0, -23887872.0, 11943936.0})});
  c[8] = a2 * gpoly(g, 8, {0.0, 0.0, 0.0, 0.0, horner(d, {20736.0, -55296.0, 50688.0, -18432.0, 2304.0}), horner(d, {-580608.0, 1216512.0, -940032.0, 359424.0, -55296.0}), horner(d, {-1824768.0, 248832.0, 3483648.0, -2488320.0, 497664.0}), horner(d, {-3483648.0, 5971968.0, -7962624.0, 6967296.0, -1990656.0}), horner(d, {3732480.0, -7464960.0, 5971968.0, -5971968.0, 2985984.0})});
  c[9] = a2 * gpoly(g, 8, {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, horner(d, {248832.0, -248832.0}), horner(d, {746496.0, -746496.0})});
  c[10] = gpoly(g, 4, {128.0, horner(d, {-384.0, 1536.0}), horner(d, {-1152.0, 0.0, 4608.0}), horner(d, {3456.0, -13824.0, 13824.0})});
  c[11] = gpoly(g, 4, {0.0, horner(d, {-384.0, 256.0}), horner(d, {192.0, -2688.0, 1536.0}), horner(d, {3456.0, -8064.0, 2304.0}), horner(d, {-1728.0, 6912.0, -6912.0})});
  c[12] = gpoly(g, 4, {0.0, 0.0, 96.0, horner(d, {0.0, 576.0}), horner(d, {-864.0, 1728.0})});
  return c;
}

inline std::array<double, 12> rd_cell_coefficients_shifted(double a, double d, double g) {
  const double gs = std::min(g, 1.0);
  const double s = 1024.0 * a * a * gs * gs;
  std::array<double, 12> c{};
  c[1] = gpoly(g, 4, {64.0, horner(d, {-192.0, 896.0}), horner(d, {0.0, -1536.0, 3840.0}), horner(d, {0.0, 0.0, -2304.0, 4608.0})})
      + a * gpoly(g, 4, {-64.0, horner(d, {96.0, -864.0}), horner(d, {1152.0, -192.0, -3456.0}), horner(d, {0.0, 2304.0, 0.0, -4608.0})});
  c[2] = gpoly(g, 4, {0.0, horner(d, {-192.0, 128.0}), horner(d, {96.0, -1728.0, 1024.0}), horner(d, {0.0, 768.0, -3840.0, 1536.0}), horner(d, {0.0, 0.0, 1152.0, -2304.0})})
      + a * gpoly(g, 4, {0.0, horner(d, {96.0, -64.0}), horner(d, {192.0, 1152.0, -736.0}), horner(d, {-576.0, 576.0, 3456.0, -1536.0}), horner(d, {0.0, -1152.0, 0.0, 2304.0})});
  c[3] = gpoly(g, 4, {0.0, 0.0, 48.0, horner(d, {0.0, 384.0}), horner(d, {0.0, 0.0, 576.0})})
      + a * gpoly(g, 4, {0.0, 0.0, 0.0, horner(d, {0.0, -192.0}), horner(d, {0.0, 0.0, -576.0})});
  c[4] = s * gpoly(g, 6, {horner(d, {441.0, -462.0, 121.0}), horner(d, {-1512.0, 8100.0, -7356.0, 1848.0}), horner(d, {1296.0, -15552.0, 50004.0, -41616.0, 10224.0}), horner(d, {0.0, 5184.0, -45792.0, 122688.0, -98496.0, 24192.0}), horner(d, {0.0, 0.0, 5184.0, -41472.0, 103680.0, -82944.0, 20736.0})});
  c[5] = s * gpoly(g, 6, {horner(d, {228.0, -246.0, 64.0}), horner(d, {-2124.0, 6378.0, -5022.0, 1146.0}), horner(d, {1188.0, -21024.0, 45120.0, -31116.0, 6600.0}), horner(d, {-1296.0, 13392.0, -81648.0, 133344.0, -80784.0, 15840.0}), horner(d, {0.0, -5184.0, 42768.0, -147744.0, 175392.0, -84672.0, 13824.0}), horner(d, {0.0, 0.0, -5184.0, 41472.0, -103680.0, 82944.0, -20736.0})});
  c[6] = s * gpoly(g, 6, {horner(d, {6.0, -12.0, 4.0}), horner(d, {-684.0, 1209.0, -762.0, 156.0}), horner(d, {576.0, -6768.0, 10182.0, -5640.0, 1041.0}), horner(d, {216.0, 6984.0, -29880.0, 34416.0, -15912.0, 2592.0}), horner(d, {324.0, -648.0, 28116.0, -69408.0, 57024.0, -18864.0, 2304.0}), horner(d, {0.0, 1296.0, -7344.0, 45792.0, -73440.0, 41472.0, -6912.0}), horner(d, {0.0, 0.0, 1296.0, -10368.0, 25920.0, -20736.0, 5184.0})});
  c[7] = s * gpoly(g, 6, {0.0, 0.0, horner(d, {180.0, -180.0, 48.0}), horner(d, {432.0, 1116.0, -1548.0, 468.0}), horner(d, {-216.0, 1944.0, 2952.0, -4896.0, 1548.0}), horner(d, {0.0, -1080.0, 1512.0, 5400.0, -6480.0, 1728.0}), horner(d, {0.0, 0.0, -1296.0, -1296.0, 5184.0, -2592.0})});
  c[8] = s * gpoly(g, 6, {0.0, 0.0, 0.0, 0.0, horner(d, {-108.0, 0.0, 36.0}), horner(d, {0.0, -540.0, 0.0, 216.0}), horner(d, {0.0, 0.0, -648.0, 0.0, 324.0})});
  c[9] = gpoly(g, 4, {64.0, horner(d, {-192.0, 896.0}), horner(d, {0.0, -1536.0, 3840.0}), horner(d, {0.0, 0.0, -2304.0, 4608.0})});
  c[10] = gpoly(g, 4, {0.0, horner(d, {-192.0, 128.0}), horner(d, {96.0, -1728.0, 1024.0}), horner(d, {0.0, 768.0, -3840.0, 1536.0}), horner(d, {0.0, 0.0, 1152.0, -2304.0})});
  c[11] = gpoly(g, 4, {0.0, 0.0, 48.0, horner(d, {0.0, 384.0}), horner(d, {0.0, 0.0, 576.0})});
  return c;
}

}  // namespace sipg
