//! Homogeneous binary and ternary forms.
//!
//! Ternary monomials of degree `d` are ordered lexicographically by exponent
//! vector, so for cubics the order is
//! u₁³, u₁²u₂, u₁²u₃, u₁u₂², u₁u₂u₃, u₁u₃², u₂³, u₂²u₃, u₂u₃², u₃³.

use num_complex::Complex64;

use crate::projective::{proj_equal, vec_norm, Mat3};
use crate::scalar::Field;

/// Exponent vectors of degree `d` in lex order.
pub fn monomials(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity((d + 1) * (d + 2) / 2);
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

pub fn monomial_index(e: [usize; 3]) -> usize {
    let d = e[0] + e[1] + e[2];
    let before: usize = (e[0] + 1..=d).map(|a| d - a + 1).sum();
    before + (d - e[0] - e[1])
}

#[derive(Clone, Debug, PartialEq)]
pub struct TernaryForm<T> {
    degree: usize,
    coeffs: Vec<T>,
}

impl<T: Field> TernaryForm<T> {
    pub fn new(degree: usize, coeffs: Vec<T>) -> Self {
        assert_eq!(coeffs.len(), (degree + 1) * (degree + 2) / 2, "coefficient count");
        TernaryForm { degree, coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(degree, vec![T::zero(); (degree + 1) * (degree + 2) / 2])
    }

    pub fn constant(c: T) -> Self {
        Self::new(0, vec![c])
    }

    /// The linear form `a·u`.
    pub fn linear(a: &[T; 3]) -> Self {
        Self::new(1, a.to_vec())
    }

    pub fn variable(i: usize) -> Self {
        let mut a = [T::zero(), T::zero(), T::zero()];
        a[i] = T::one();
        Self::linear(&a)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [usize; 3]) -> &T {
        &self.coeffs[monomial_index(e)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.coeffs)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "adding forms of different degree");
        Self::new(self.degree, self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "subtracting forms of different degree");
        Self::new(self.degree, self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() - b.clone()).collect())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.degree, self.coeffs.iter().map(|a| a.clone() * s.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.degree, self.coeffs.iter().map(|a| -a.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.degree + o.degree;
        let mut out = vec![T::zero(); (d + 1) * (d + 2) / 2];
        let ma = monomials(self.degree);
        let mb = monomials(o.degree);
        for (ea, ca) in ma.iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            for (eb, cb) in mb.iter().zip(&o.coeffs) {
                if cb.is_zero() {
                    continue;
                }
                let k = monomial_index([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]]);
                out[k] = out[k].clone() + ca.clone() * cb.clone();
            }
        }
        Self::new(d, out)
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::constant(T::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &[T; 3]) -> T {
        let mut pw: [Vec<T>; 3] = std::array::from_fn(|_| vec![T::one()]);
        for (i, p) in pw.iter_mut().enumerate() {
            for k in 1..=self.degree {
                let v = p[k - 1].clone() * x[i].clone();
                p.push(v);
            }
        }
        monomials(self.degree)
            .iter()
            .zip(&self.coeffs)
            .fold(T::zero(), |acc, (e, c)| acc + c.clone() * pw[0][e[0]].clone() * pw[1][e[1]].clone() * pw[2][e[2]].clone())
    }

    pub fn eval_complex(&self, x: &[Complex64; 3]) -> Complex64 {
        monomials(self.degree).iter().zip(&self.coeffs).fold(Complex64::new(0.0, 0.0), |acc, (e, c)| {
            acc + c.to_complex() * x[0].powu(e[0] as u32) * x[1].powu(e[1] as u32) * x[2].powu(e[2] as u32)
        })
    }

    /// Gradient `(∂/∂u₁, ∂/∂u₂, ∂/∂u₃)` at a complex point.
    pub fn gradient_complex(&self, x: &[Complex64; 3]) -> [Complex64; 3] {
        let mut g = [Complex64::new(0.0, 0.0); 3];
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            let c = c.to_complex();
            for i in 0..3 {
                if e[i] == 0 {
                    continue;
                }
                let mut t = c * e[i] as f64;
                for j in 0..3 {
                    let p = if j == i { e[j] - 1 } else { e[j] };
                    t *= x[j].powu(p as u32);
                }
                g[i] += t;
            }
        }
        g
    }

    /// `f(L₁(u), L₂(u), L₃(u))` for ternary forms `L` of a common degree.
    pub fn compose(&self, subs: &[TernaryForm<T>; 3]) -> TernaryForm<T> {
        let dl = subs[0].degree;
        let mut pw: [Vec<TernaryForm<T>>; 3] = std::array::from_fn(|_| vec![TernaryForm::constant(T::one())]);
        for (i, p) in pw.iter_mut().enumerate() {
            for k in 1..=self.degree {
                let v = p[k - 1].mul(&subs[i]);
                p.push(v);
            }
        }
        let mut out = TernaryForm::zero(self.degree * dl);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let t = pw[0][e[0]].mul(&pw[1][e[1]]).mul(&pw[2][e[2]]).scale(c);
            out = out.add(&t);
        }
        out
    }

    /// `x ↦ f(Hx)`.
    pub fn substitute(&self, h: &Mat3<T>) -> TernaryForm<T> {
        let subs = std::array::from_fn(|i| TernaryForm::linear(&h.row(i)));
        self.compose(&subs)
    }

    /// Restriction to the line `s·p + t·q`.
    pub fn restrict(&self, p: &[T; 3], q: &[T; 3]) -> BinaryForm<T> {
        let lin: [BinaryForm<T>; 3] = std::array::from_fn(|i| BinaryForm::new(vec![p[i].clone(), q[i].clone()]));
        let mut pw: [Vec<BinaryForm<T>>; 3] = std::array::from_fn(|_| vec![BinaryForm::new(vec![T::one()])]);
        for (i, pv) in pw.iter_mut().enumerate() {
            for k in 1..=self.degree {
                let v = pv[k - 1].mul(&lin[i]);
                pv.push(v);
            }
        }
        let mut out = BinaryForm::new(vec![T::zero(); self.degree + 1]);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            out = out.add(&pw[0][e[0]].mul(&pw[1][e[1]]).mul(&pw[2][e[2]]).scale(c));
        }
        out
    }

    /// Proportionality of coefficient vectors. Zero forms are never
    /// proportional to anything.
    pub fn proportional(&self, o: &Self, tol: f64) -> bool {
        self.degree == o.degree && proj_equal(&self.coeffs, &o.coeffs, tol).unwrap_or(false)
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> TernaryForm<U> {
        TernaryForm::new(self.degree, self.coeffs.iter().map(f).collect())
    }

    pub fn to_complex(&self) -> TernaryForm<Complex64> {
        self.map(|c| c.to_complex())
    }
}

/// Determinant of a 3×3 matrix of ternary forms given by columns.
pub fn det3_forms<T: Field>(c: &[[TernaryForm<T>; 3]; 3]) -> TernaryForm<T> {
    // c[j][i] is entry (i, j)
    let e = |i: usize, j: usize| &c[j][i];
    let t1 = e(0, 0).mul(&e(1, 1).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 1))));
    let t2 = e(0, 1).mul(&e(1, 0).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 0))));
    let t3 = e(0, 2).mul(&e(1, 0).mul(e(2, 1)).sub(&e(1, 1).mul(e(2, 0))));
    t1.sub(&t2).add(&t3)
}

/// Binary form `Σ c_k s^{d-k} t^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<T> {
    coeffs: Vec<T>,
}

impl<T: Field> BinaryForm<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "binary form needs a degree");
        BinaryForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.coeffs.len(), o.coeffs.len());
        Self::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * s.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, s: &T, t: &T) -> T {
        let d = self.degree();
        self.coeffs.iter().enumerate().fold(T::zero(), |acc, (k, c)| {
            let mut term = c.clone();
            for _ in 0..d - k {
                term = term * s.clone();
            }
            for _ in 0..k {
                term = term * t.clone();
            }
            acc + term
        })
    }

    pub fn to_complex(&self) -> BinaryForm<Complex64> {
        BinaryForm::new(self.coeffs.iter().map(|c| c.to_complex()).collect())
    }
}

/// Discriminant of a binary cubic `a s³ + b s²t + c st² + d t³`.
pub fn cubic_discriminant<T: Field>(f: &BinaryForm<T>) -> T {
    assert_eq!(f.degree(), 3);
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| f.coeffs[i].clone());
    let k = |n: i64| T::from_i64(n);
    b.clone() * b.clone() * c.clone() * c.clone() - k(4) * a.clone() * c.clone() * c.clone() * c.clone()
        - k(4) * b.clone() * b.clone() * b.clone() * d.clone()
        - k(27) * a.clone() * a.clone() * d.clone() * d.clone()
        + k(18) * a * b * c * d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Rational;

    #[test]
    fn monomial_order() {
        let m = monomials(3);
        assert_eq!(m[0], [3, 0, 0]);
        assert_eq!(m[1], [2, 1, 0]);
        assert_eq!(m[2], [2, 0, 1]);
        assert_eq!(m[4], [1, 1, 1]);
        assert_eq!(m[9], [0, 0, 3]);
        for (i, e) in m.iter().enumerate() {
            assert_eq!(monomial_index(*e), i);
        }
        for (i, e) in monomials(5).iter().enumerate() {
            assert_eq!(monomial_index(*e), i);
        }
    }

    #[test]
    fn product_and_eval() {
        let x = TernaryForm::<Rational>::variable(0);
        let y = TernaryForm::<Rational>::variable(1);
        let f = x.add(&y).pow(3);
        assert_eq!(f.coeff([2, 1, 0]), &rat(3));
        assert_eq!(f.eval(&[rat(1), rat(2), rat(7)]), rat(27));
    }

    #[test]
    fn substitution_matches_eval() {
        let f = TernaryForm::new(2, (1..=6).map(rat).collect::<Vec<_>>());
        let h = Mat3::from_i64([[1, 2, 0], [0, 1, -1], [3, 0, 1]]);
        let g = f.substitute(&h);
        let x = [rat(2), rat(-1), rat(5)];
        assert_eq!(g.eval(&x), f.eval(&h.mul_vec(&x)));
    }

    #[test]
    fn restriction() {
        let f = TernaryForm::new(3, (0..10).map(|i| rat(i * i - 3)).collect::<Vec<_>>());
        let p = [rat(1), rat(0), rat(2)];
        let q = [rat(-1), rat(3), rat(1)];
        let b = f.restrict(&p, &q);
        let (s, t) = (rat(3), rat(-2));
        let pt: [Rational; 3] = std::array::from_fn(|i| s.clone() * p[i].clone() + t.clone() * q[i].clone());
        assert_eq!(b.eval(&s, &t), f.eval(&pt));
    }

    #[test]
    fn discriminant() {
        // s(s-t)(s+t) = s^3 - s t^2
        let f = BinaryForm::new(vec![rat(1), rat(0), rat(-1), rat(0)]);
        assert_eq!(cubic_discriminant(&f), rat(4));
        let g = BinaryForm::new(vec![rat(1), rat(-2), rat(1), rat(0)]);
        assert_eq!(cubic_discriminant(&g), rat(0));
    }

    #[test]
    fn gradient() {
        let f = TernaryForm::new(2, vec![1.0, 2.0, 0.0, 0.0, 0.0, 3.0]).to_complex();
        let x = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(-1.0, 0.0)];
        let g = f.gradient_complex(&x);
        assert!((g[0] - Complex64::new(6.0, 0.0)).norm() < 1e-12);
        assert!((g[1] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!((g[2] - Complex64::new(-6.0, 0.0)).norm() < 1e-12);
    }
}
