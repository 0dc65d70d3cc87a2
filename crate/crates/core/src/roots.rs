//! Polynomial roots: complex simultaneous iteration and exact rational search.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::BinaryForm;
use crate::scalar::{normalized_complex, primitive_integer, rational_to_f64, Field};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Evaluates `Σ a_k z^k` (ascending coefficients) and its derivative.
fn horner(a: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = c(0.0);
    let mut dp = c(0.0);
    for &ak in a.iter().rev() {
        dp = dp * z + p;
        p = p * z + ak;
    }
    (p, dp)
}

/// All complex roots of `Σ a_k z^k` with multiplicity. Leading zeros are
/// trimmed, so the count equals the effective degree.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut a: Vec<Complex64> = coeffs.to_vec();
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    while a.last().is_some_and(|z| z.norm() <= 1e-300 * scale || *z == c(0.0)) {
        a.pop();
    }
    let mut zeros = 0;
    while a.first().is_some_and(|z| *z == c(0.0)) {
        a.remove(0);
        zeros += 1;
    }
    let n = a.len().saturating_sub(1);
    let mut roots = vec![c(0.0); zeros];
    if n == 0 {
        return roots;
    }
    let lead = a[n];
    let a: Vec<Complex64> = a.iter().map(|z| z / lead).collect();
    if n == 1 {
        roots.push(-a[0]);
        return roots;
    }
    let radius = 1.0 + a[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let r0 = a[0].norm().powf(1.0 / n as f64).clamp(1e-3, radius);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(&a, z[i]);
            if p == c(0.0) {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (c(1.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&a, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() || step.norm() > 1e-6 * (1.0 + zi.norm()) {
                break;
            }
            *zi -= step;
        }
    }
    roots.extend(z);
    roots
}

/// Projective roots `(s:t)` of a binary form, as complex pairs. The chart is
/// chosen so that roots near `(1:0)` stay well conditioned.
pub fn binary_roots_complex<T: Field>(f: &BinaryForm<T>) -> Vec<[Complex64; 2]> {
    let a = normalized_complex(f.coeffs());
    let d = f.degree();
    if a.iter().all(|z| *z == c(0.0)) {
        return Vec::new();
    }
    if a[0].norm() >= a[d].norm() {
        // p(z, 1) = Σ a_k z^{d-k}; ascending order is a reversed
        let asc: Vec<Complex64> = a.iter().rev().cloned().collect();
        let r = poly_roots(&asc);
        let mut out: Vec<[Complex64; 2]> = r.iter().map(|&z| [z, c(1.0)]).collect();
        out.extend((out.len()..d).map(|_| [c(1.0), c(0.0)]));
        out
    } else {
        // p(1, w) = Σ a_k w^k
        let r = poly_roots(&a);
        let mut out: Vec<[Complex64; 2]> = r.iter().map(|&w| [c(1.0), w]).collect();
        out.extend((out.len()..d).map(|_| [c(0.0), c(1.0)]));
        out
    }
}

fn eval_int(p: &[BigInt], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, a| acc * x + BigRational::from_integer(a.clone()))
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
    p
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let coef = &r[k + db] / &b[db];
        for i in 0..=db {
            r[k + i] = &r[k + i] - &coef * &b[i];
        }
        q[k] = coef;
    }
    if db == 0 {
        r = vec![BigRational::zero()];
    } else {
        r.truncate(db);
    }
    (q, trim(r))
}

pub(crate) fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = poly_divmod(&x, &y).1;
        x = y;
        y = r;
    }
    x
}

/// Simplest fraction (smallest denominator) in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    if lo > hi {
        return simplest_between(hi, lo);
    }
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if fl + BigRational::one() <= *hi {
        return lo.ceil();
    }
    // lo, hi in (n, n+1)
    let n = lo.floor();
    let inner = simplest_between(&(BigRational::one() / (hi - &n)), &(BigRational::one() / (lo - &n)));
    n + BigRational::one() / inner
}

/// All distinct rational roots of `Σ a_k z^k` (ascending, exact).
pub fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let p = trim(coeffs.to_vec());
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let mut p = p;
    if p[0].is_zero() {
        roots.push(BigRational::zero());
        while p.len() > 1 && p[0].is_zero() {
            p.remove(0);
        }
        if p.len() <= 1 {
            return roots;
        }
    }
    let dp: Vec<BigRational> =
        p.iter().enumerate().skip(1).map(|(k, a)| a * BigRational::from_integer(BigInt::from(k))).collect();
    let g = poly_gcd(&p, &dp);
    let sq = if g.len() > 1 { poly_divmod(&p, &g).0 } else { p.clone() };
    let sq = primitive_integer(&sq);
    let lead = sq.last().unwrap().abs();
    let konst = sq[0].abs();
    let numeric = poly_roots(&normalized_complex(&sq.iter().map(|x| BigRational::from_integer(x.clone())).collect::<Vec<_>>()));
    let is_root = |r: &BigRational| eval_int(&sq, r).is_zero();
    let divides = |r: &BigRational| {
        (lead.is_multiple_of(r.denom())) && (konst.is_zero() || r.numer().is_zero() || konst.is_multiple_of(&r.numer().abs()))
    };
    for z in numeric {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        if let Some(r) = isolate_rational(&sq, &lead, z.re, &divides, &is_root) {
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    roots.sort();
    roots
}

fn isolate_rational(
    p: &[BigInt],
    lead: &BigInt,
    x: f64,
    divides: &dyn Fn(&BigRational) -> bool,
    is_root: &dyn Fn(&BigRational) -> bool,
) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    // continued-fraction convergents of the float estimate
    let mut h = (BigInt::one(), BigInt::zero());
    let mut k = (BigInt::zero(), BigInt::one());
    let mut rest = BigRational::from_float(x)?;
    for _ in 0..64 {
        let a = rest.floor().to_integer();
        let hn = &a * &h.0 + &h.1;
        let kn = &a * &k.0 + &k.1;
        h = (hn.clone(), h.0);
        k = (kn.clone(), k.0);
        if &kn.abs() > lead {
            break;
        }
        let cand = BigRational::new(hn, kn);
        let near = (rational_to_f64(&cand) - x).abs() <= 1e-6 * (1.0 + x.abs());
        if near && divides(&cand) && is_root(&cand) {
            return Some(cand);
        }
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rest = BigRational::one() / frac;
    }
    // exact bisection on a sign-changing bracket
    let eval = |r: &BigRational| eval_int(p, r);
    let sign = |v: &BigRational| if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 };
    let xq = BigRational::from_float(x)?;
    let mut delta = BigRational::from_float(1e-9 * x.abs().max(1.0))?;
    let mut bracket = None;
    for _ in 0..24 {
        let lo = &xq - &delta;
        let hi = &xq + &delta;
        let (sl, sh) = (sign(&eval(&lo)), sign(&eval(&hi)));
        if sl == 0 {
            return is_root(&lo).then_some(lo);
        }
        if sh == 0 {
            return is_root(&hi).then_some(hi);
        }
        if sl != sh {
            bracket = Some((lo, hi, sl));
            break;
        }
        delta *= BigRational::from_integer(BigInt::from(10));
    }
    let (mut lo, mut hi, sl) = bracket?;
    let width_target = BigRational::new(BigInt::one(), BigInt::from(2) * lead * lead);
    while &hi - &lo >= width_target {
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        let sm = sign(&eval(&mid));
        if sm == 0 {
            return Some(mid);
        }
        if sm == sl {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let cand = simplest_between(&lo, &hi);
    is_root(&cand).then_some(cand)
}

/// Rational projective roots `(s:t)` of an exact binary form, normalized to
/// `(r:1)` or `(1:0)`.
pub fn binary_rational_roots(f: &BinaryForm<BigRational>) -> Vec<(BigRational, BigRational)> {
    let a = f.coeffs();
    let d = f.degree();
    let mut out = Vec::new();
    if a.iter().all(|x| x.is_zero()) {
        return out;
    }
    if a[0].is_zero() {
        out.push((BigRational::one(), BigRational::zero()));
    }
    // p(z, 1) = Σ a_k z^{d-k}
    let asc: Vec<BigRational> = (0..=d).map(|j| a[d - j].clone()).collect();
    for r in rational_roots(&asc) {
        out.push((r, BigRational::one()));
    }
    out
}
