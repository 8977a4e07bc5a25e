//! Transfer operators of the `d`-fold covering `σ(t) = d·t mod 1`.
//!
//! `(T_W f)(t) = Σ_{j=0}^{d-1} W((t+j)/d) f((t+j)/d)`. On coefficients this
//! is `(T_W f)_m = d · (W·f)_{dm}`.

use num_complex::Complex64;
use num_rational::Rational64;

use super::trig::TrigPoly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check_degree(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("scaling degree {d} is below 2")));
    }
    Ok(())
}

/// `T_W f` computed exactly on coefficients.
pub fn transfer_apply<C: Scalar>(w: &TrigPoly<C>, f: &TrigPoly<C>, d: u32) -> Result<TrigPoly<C>> {
    check_degree(d)?;
    Ok((w * f).decimate(d).scale(&C::from_i64(d as i64)))
}

/// `T_W f` at one point, summing over the `d` preimages.
pub fn transfer_branch_sum(w: &TrigPoly<Complex64>, f: &TrigPoly<Complex64>, d: u32, t: f64) -> Complex64 {
    Complex64::sum_all((0..d).map(|j| {
        let y = (t + j as f64) / d as f64;
        w.eval(y) * f.eval(y)
    }))
}

/// Largest gap between the coefficient route and the branch sum on `grid` points.
pub fn transfer_route_gap(w: &TrigPoly<Complex64>, f: &TrigPoly<Complex64>, d: u32, grid: usize) -> Result<f64> {
    let tf = transfer_apply(w, f, d)?;
    Ok((0..grid)
        .map(|j| {
            let t = j as f64 / grid as f64;
            (tf.eval(t) - transfer_branch_sum(w, f, d, t)).norm()
        })
        .fold(0.0, f64::max))
}

/// `W_F(t) = |1 + e_2(t)|² / 6 = ⅓ + ⅙(e_2 + e_{-2})`, scaling degree 3.
pub fn cantor_filter() -> TrigPoly<Complex64> {
    cantor_filter_exact().to_complex()
}

pub fn cantor_filter_exact() -> TrigPoly<Rational64> {
    let one_plus_z2 = TrigPoly::new([(0, Rational64::from_integer(1)), (2, Rational64::from_integer(1))]);
    (&one_plus_z2 * &one_plus_z2.conj()).scale(&Rational64::new(1, 6))
}

pub const LOWPASS_TOLERANCE: f64 = 1e-12;

/// `W(0) = 1` and `W(j/d) = 0` for `j = 1..d`, so that `δ₀` is invariant under `T_W`.
pub fn lowpass_check(w: &TrigPoly<Complex64>, d: u32) -> bool {
    (w.eval(0.0) - 1.0).norm() <= LOWPASS_TOLERANCE
        && (1..d).all(|j| w.eval(j as f64 / d as f64).norm() <= LOWPASS_TOLERANCE)
}

/// `|∫ (1/d) Σ_j f((t+j)/d) dt - ∫ f dt|`, evaluated on coefficients.
pub fn strong_invariance_check<C: Scalar>(f: &TrigPoly<C>, d: u32) -> Result<C> {
    check_degree(d)?;
    let branch_average = f.decimate(d);
    Ok(branch_average.integral() - f.integral())
}

/// `(Vf)(t) = m(t) f(d·t)`.
pub fn v_apply<C: Scalar>(m: &TrigPoly<C>, f: &TrigPoly<C>, d: u32) -> TrigPoly<C> {
    m * &f.dilate(d)
}

/// `(V*g)(t) = (1/d) Σ_j conj(m)·g at (t+j)/d`, i.e. `(conj(m)·g)_{dk}`.
pub fn v_adjoint_apply<C: Scalar>(m: &TrigPoly<C>, g: &TrigPoly<C>, d: u32) -> TrigPoly<C> {
    (&m.conj() * g).decimate(d)
}

/// `|⟨Vf, g⟩ - ⟨f, V*g⟩|` with both inner products taken on coefficients.
pub fn v_adjoint_check(m: &TrigPoly<Complex64>, f: &TrigPoly<Complex64>, g: &TrigPoly<Complex64>, d: u32) -> Result<f64> {
    check_degree(d)?;
    let lhs = v_apply(m, f, d).inner(g);
    let rhs = f.inner(&v_adjoint_apply(m, g, d));
    Ok((lhs - rhs).norm())
}

/// `max_t |Σ_j W((t+j)/d) - 1|` on `grid` points.
pub fn branch_sum_defect(w: &TrigPoly<Complex64>, d: u32, grid: usize) -> f64 {
    (0..grid)
        .map(|i| {
            let t = i as f64 / grid as f64;
            let s = Complex64::sum_all((0..d).map(|j| w.eval((t + j as f64) / d as f64)));
            (s - 1.0).norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::filter::{w_from_filter, FilterCoeffs};

    fn one<C: Scalar>() -> TrigPoly<C> {
        TrigPoly::constant(C::one())
    }

    #[test]
    fn constants_are_preserved() {
        let w = w_from_filter(&FilterCoeffs::haar());
        assert!(transfer_apply(&w, &one(), 2).unwrap().max_coeff_diff(&one()) < 1e-15);
        let d4 = w_from_filter(&FilterCoeffs::daubechies4());
        assert!(transfer_apply(&d4, &one(), 2).unwrap().max_coeff_diff(&one()) < 1e-14);
        assert_eq!(transfer_apply(&cantor_filter_exact(), &one(), 3).unwrap(), one());
    }

    #[test]
    fn flat_weight_on_characters() {
        let w = one::<Complex64>();
        let out = transfer_apply(&w, &TrigPoly::exponential(2), 2).unwrap();
        assert_eq!(out, TrigPoly::exponential(1).scale(&Complex64::new(2.0, 0.0)));
        assert!(transfer_apply(&w, &TrigPoly::exponential(3), 2).unwrap().is_zero());
    }

    #[test]
    fn routes_agree() {
        let w = w_from_filter(&FilterCoeffs::daubechies4());
        let f = TrigPoly::new([(-3, Complex64::new(0.2, 0.5)), (1, Complex64::new(1.0, -0.3)), (4, Complex64::new(0.0, 2.0))]);
        assert!(transfer_route_gap(&w, &f, 2, 512).unwrap() < 1e-12);
        assert!(transfer_route_gap(&cantor_filter(), &f, 3, 512).unwrap() < 1e-12);
    }

    #[test]
    fn cantor_filter_values() {
        let w = cantor_filter_exact();
        assert_eq!(w.coeff(0), Rational64::new(1, 3));
        assert_eq!(w.coeff(2), Rational64::new(1, 6));
        assert_eq!(w.coeff(-2), Rational64::new(1, 6));
        assert!((cantor_filter().eval(0.0).re - 2.0 / 3.0).abs() < 1e-12);
        assert!(!lowpass_check(&cantor_filter(), 3));
        assert!(branch_sum_defect(&cantor_filter(), 3, 512) < 1e-12);
    }

    #[test]
    fn lowpass_examples() {
        assert!(lowpass_check(&w_from_filter(&FilterCoeffs::haar()), 2));
        assert!(!lowpass_check(&one(), 2));
        assert!(lowpass_check(&w_from_filter(&FilterCoeffs::daubechies4()), 2));
    }

    #[test]
    fn strong_invariance_examples() {
        let e3 = TrigPoly::<Complex64>::exponential(3);
        assert!(e3.decimate(2).is_zero());
        assert_eq!(strong_invariance_check(&e3, 2).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(strong_invariance_check(&one::<Rational64>(), 2).unwrap(), Rational64::from_integer(0));
    }

    #[test]
    fn adjoint_identity() {
        let m = w_from_filter(&FilterCoeffs::daubechies4());
        let f = TrigPoly::new([(0, Complex64::new(1.0, 1.0)), (5, Complex64::new(-0.5, 0.0))]);
        let g = TrigPoly::new([(-7, Complex64::new(0.1, 0.0)), (2, Complex64::new(0.0, 3.0)), (8, Complex64::new(1.0, 0.0))]);
        for d in [2, 3] {
            assert!(v_adjoint_check(&m, &f, &g, d).unwrap() <= 1e-12);
        }
    }
}
