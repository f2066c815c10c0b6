#pragma once

// Thin RAII wrapper over mpfr_t used for high-precision embeddings.

#include <gmp.h>
#include <mpfr.h>

#include "aflt/arith.hpp"

namespace aflt::mp {

class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  void set_prec(mpfr_prec_t p) { mpfr_prec_round(v_, p, MPFR_RNDN); }

  void set(const Integer& a) { mpfr_set_z(v_, a.get_mpz_t(), MPFR_RNDN); }
  void set(const Rational& a) { mpfr_set_q(v_, a.get_mpq_t(), MPFR_RNDN); }
  void set(long double a) { mpfr_set_ld(v_, a, MPFR_RNDN); }
  long double ld() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

 private:
  mpfr_t v_;
};

struct Complex {
  Real re, im;
  explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  void set_prec(mpfr_prec_t p) {
    re.set_prec(p);
    im.set_prec(p);
  }
};

// r = a * b (complex), temporaries at the precision of r.
inline void mul(Complex& r, const Complex& a, const Complex& b) {
  mpfr_prec_t p = r.re.prec();
  Real t1(p), t2(p), t3(p);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t3.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_fma(t3.get(), a.im.get(), b.re.get(), t3.get(), MPFR_RNDN);
  mpfr_sub(r.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_set(r.im.get(), t3.get(), MPFR_RNDN);
}

inline void div(Complex& r, const Complex& a, const Complex& b) {
  mpfr_prec_t p = r.re.prec();
  Real den(p), t1(p), t2(p), nr(p), ni(p);
  mpfr_sqr(den.get(), b.re.get(), MPFR_RNDN);
  mpfr_fma(den.get(), b.im.get(), b.im.get(), den.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_fma(nr.get(), a.im.get(), b.im.get(), t1.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(ni.get(), t2.get(), t1.get(), MPFR_RNDN);
  mpfr_div(r.re.get(), nr.get(), den.get(), MPFR_RNDN);
  mpfr_div(r.im.get(), ni.get(), den.get(), MPFR_RNDN);
}

// log|z| as long double.
inline long double log_abs(const Complex& z) {
  mpfr_prec_t p = z.re.prec();
  Real t(p);
  mpfr_hypot(t.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  mpfr_log(t.get(), t.get(), MPFR_RNDN);
  return t.ld();
}

}  // namespace aflt::mp
