#include "ripl/wavelet.hpp"

#include <array>

namespace ripl {

namespace {

// Minimal-phase Daubechies lowpass filters, N = 1..10 vanishing moments.
// Computed by spectral factorization of the half-band polynomial at 60-digit
// precision and rounded to double; db2 agrees with the closed-form
// ((1±sqrt(3)), (3±sqrt(3)))/(4 sqrt(2)) taps to machine epsilon.
const std::array<std::vector<double>, 10> kDaubechies = {{
    {7.07106781186547573e-01, 7.07106781186547573e-01},
    {4.82962913144534156e-01, 8.36516303737807942e-01, 2.24143868042013389e-01,
     -1.29409522551260370e-01},
    {3.32670552950082632e-01, 8.06891509311092547e-01, 4.59877502118491543e-01,
     -1.35011020010254584e-01, -8.54412738820266582e-02, 3.52262918857095333e-02},
    {2.30377813308896506e-01, 7.14846570552915672e-01, 6.30880767929858921e-01,
     -2.79837694168598543e-02, -1.87034811719093086e-01, 3.08413818355607640e-02,
     3.28830116668851966e-02, -1.05974017850690317e-02},
    {1.60102397974192928e-01, 6.03829269797189649e-01, 7.24308528437772936e-01,
     1.38428145901320743e-01, -2.42294887066382025e-01, -3.22448695846383748e-02,
     7.75714938400457188e-02, -6.24149021279827437e-03, -1.25807519990819988e-02,
     3.33572528547377125e-03},
    {1.11540743350109467e-01, 4.94623890398453059e-01, 7.51133908021095364e-01,
     3.15250351709197629e-01, -2.26264693965439828e-01, -1.29766867567261940e-01,
     9.75016055873230425e-02, 2.75228655303057269e-02, -3.15820393174860298e-02,
     5.53842201161496126e-04, 4.77725751094551076e-03, -1.07730108530847959e-03},
    {7.78520540850091841e-02, 3.96539319481917285e-01, 7.29132090846235092e-01,
     4.69782287405193122e-01, -1.43906003928564979e-01, -2.24036184993874982e-01,
     7.13092192668302594e-02, 8.06126091510830783e-02, -3.80299369350144134e-02,
     -1.65745416306668815e-02, 1.25509985560998405e-02, 4.29577972921366515e-04,
     -1.80164070404749085e-03, 3.53713799974520241e-04},
    {5.44158422431040081e-02, 3.12871590914299946e-01, 6.75630736297289758e-01,
     5.85354683654206731e-01, -1.58291052563493059e-02, -2.84015542961546907e-01,
     4.72484573913282795e-04, 1.28747426620478472e-01, -1.73693010018075474e-02,
     -4.40882539307947546e-02, 1.39810279173982824e-02, 8.74609404740577662e-03,
     -4.87035299345157414e-03, -3.91740373376947050e-04, 6.75449406450569331e-04,
     -1.17476784124769535e-04},
    {3.80779473638783450e-02, 2.43834674612590341e-01, 6.04823123690111153e-01,
     6.57288078051300517e-01, 1.33197385825007564e-01, -2.93273783279174916e-01,
     -9.68407832229764565e-02, 1.48540749338106376e-01, 3.07256814793333798e-02,
     -6.76328290613299743e-02, 2.50947114831451973e-04, 2.23616621236790956e-02,
     -4.72320475775139716e-03, -4.28150368246343026e-03, 1.84764688305622655e-03,
     2.30385763523195973e-04, -2.51963188942710124e-04, 3.93473203162716026e-05},
    {2.66700579005555542e-02, 1.88176800077691497e-01, 5.27201188931725628e-01,
     6.88459039453603538e-01, 2.81172343660577473e-01, -2.49846424327315381e-01,
     -1.95946274377377050e-01, 1.27369340335793252e-01, 9.30573646035723484e-02,
     -7.13941471663970817e-02, -2.94575368218758134e-02, 3.32126740593410019e-02,
     3.60655356695616970e-03, -1.07331754833305745e-02, 1.39535174705290106e-03,
     1.99240529518505613e-03, -6.85856694959711619e-04, -1.16466855129285449e-04,
     9.35886703200695919e-05, -1.32642028945212443e-05},
}};

std::vector<double> highpass_from_lowpass(const std::vector<double>& h) {
  const int L = static_cast<int>(h.size());
  std::vector<double> g(L);
  for (int k = 0; k < L; ++k) g[k] = (k % 2 == 0 ? 1.0 : -1.0) * h[L - 1 - k];
  return g;
}

void check_spec(const WaveletSpec& spec, int n) {
  require(spec.levels >= 1, ErrorCode::ParameterOrder, "decomposition depth must be >= 1");
  const int N = spec.family == WaveletFamily::Haar ? 1 : spec.vanishing_moments;
  require(N >= 1 && N <= 10, ErrorCode::ParameterOrder, "vanishing moments must lie in 1..10");
  require(n >= 1 && n % (1 << spec.levels) == 0, ErrorCode::LengthNotDivisible,
          "signal length must be divisible by 2^levels");
}

int effective_moments(const WaveletSpec& spec) {
  return spec.family == WaveletFamily::Haar ? 1 : spec.vanishing_moments;
}

// One analysis stage on the first `len` entries: approx to the front, detail
// behind it. c_j = sum_k h_k x_{(2j+k) mod len}.
void analysis_stage(cvec& buf, int len, const std::vector<double>& h, const std::vector<double>& g) {
  const int half = len / 2;
  cvec out(len);
  for (int j = 0; j < half; ++j) {
    std::complex<double> a = 0.0, d = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) {
      const std::complex<double> v = buf[(2 * j + static_cast<int>(k)) % len];
      a += h[k] * v;
      d += g[k] * v;
    }
    out[j] = a;
    out[half + j] = d;
  }
  buf.head(len) = out;
}

// Exact adjoint of analysis_stage.
void synthesis_stage(cvec& buf, int len, const std::vector<double>& h, const std::vector<double>& g) {
  const int half = len / 2;
  cvec out = cvec::Zero(len);
  for (int j = 0; j < half; ++j) {
    const std::complex<double> a = buf[j], d = buf[half + j];
    for (std::size_t k = 0; k < h.size(); ++k) {
      out[(2 * j + static_cast<int>(k)) % len] += h[k] * a + g[k] * d;
    }
  }
  buf.head(len) = out;
}

}  // namespace

int WaveletSpec::filter_length() const { return 2 * effective_moments(*this); }

const std::vector<double>& daubechies_lowpass(int N) {
  require(N >= 1 && N <= 10, ErrorCode::ParameterOrder, "vanishing moments must lie in 1..10");
  return kDaubechies[N - 1];
}

std::vector<int> wavelet_boundaries(int n, int levels) {
  require(n % (1 << levels) == 0, ErrorCode::LengthNotDivisible,
          "signal length must be divisible by 2^levels");
  std::vector<int> M;
  M.push_back(0);
  M.push_back(n >> levels);  // scaling block
  for (int j = levels; j >= 1; --j) M.push_back(M.back() + (n >> j));
  return M;
}

cvec wavelet_forward(const cvec& x, const WaveletSpec& spec) {
  check_spec(spec, static_cast<int>(x.size()));
  const auto& h = daubechies_lowpass(effective_moments(spec));
  const auto g = highpass_from_lowpass(h);
  cvec buf = x;
  int len = static_cast<int>(x.size());
  for (int j = 0; j < spec.levels; ++j) {
    analysis_stage(buf, len, h, g);
    len /= 2;
  }
  return buf;
}

cvec wavelet_inverse(const cvec& c, const WaveletSpec& spec) {
  check_spec(spec, static_cast<int>(c.size()));
  const auto& h = daubechies_lowpass(effective_moments(spec));
  const auto g = highpass_from_lowpass(h);
  cvec buf = c;
  int len = static_cast<int>(c.size()) >> (spec.levels - 1);
  for (int j = 0; j < spec.levels; ++j) {
    synthesis_stage(buf, len, h, g);
    len *= 2;
  }
  return buf;
}

}  // namespace ripl
