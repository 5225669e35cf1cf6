//! Block-form criteria for complex, symplectic and complex symplectic
//! structures relative to a codimension-one Abelian ideal.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{AaError, ThmCSParams};
use crate::csgeom::{is_almost_complex, symplectic_orthogonal, verify_cs, CSStructure, CsError};
use crate::lie::{codim1_abelian_ideals, Codim1Ideals, LieAlgebra};
use crate::matrix::QMat;
use crate::rat::{vec_ops, QVec, Rat};
use crate::subspace::Subspace;

/// Outcome of the integrability criterion in the splitting `u = u_J ⊕ ⟨JX⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexBlockForm {
    Conforms { f0: QMat, v: QVec, a: Rat },
    Violation { lower_left_zero: bool, f0_commutes: bool },
}

impl ComplexBlockForm {
    pub fn conforms(&self) -> bool {
        matches!(self, ComplexBlockForm::Conforms { .. })
    }
}

/// Outcome of the closedness criterion in the splitting `u = u' ⊕ u^{⊥ω}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymplecticBlockForm {
    Conforms { f_prime: QMat, alpha: QVec, a_prime: Rat },
    Violation { preserves_perp: bool, f_prime_in_sp: bool },
}

impl SymplecticBlockForm {
    pub fn conforms(&self) -> bool {
        matches!(self, SymplecticBlockForm::Conforms { .. })
    }
}

/// A codimension-one Abelian ideal (the first witness when there are several).
pub(crate) fn detect_ideal(alg: &LieAlgebra) -> Result<Subspace, AaError> {
    match codim1_abelian_ideals(alg) {
        Codim1Ideals::NoneFound => Err(AaError::NotAlmostAbelian),
        Codim1Ideals::Unique(u) => Ok(u),
        Codim1Ideals::Multiple { witnesses, .. } => Ok(witnesses[0].clone()),
    }
}

fn check_ideal(alg: &LieAlgebra, u: &Subspace) -> Result<(), AaError> {
    if u.ambient_dim() != alg.dim()
        || u.dim() + 1 != alg.dim()
        || !alg.is_ideal(u)
        || !alg.is_abelian_subspace(u)
    {
        return Err(AaError::NotAlmostAbelian);
    }
    Ok(())
}

/// The covector with kernel `u` normalised to 1 on `x`.
fn transversal(u: &Subspace, x: &[Rat]) -> QVec {
    let lambda = u.annihilator().vectors().remove(0);
    let s = vec_ops::dot(&lambda, x);
    vec_ops::scale(&lambda, &(Rat::one() / s))
}

/// Some `X ∉ u` with `JX ∈ u`.
fn adapted_x(u: &Subspace, j: &QMat) -> QVec {
    let x0 = u.coordinate_complement().vectors().remove(0);
    let pi = transversal(u, &x0);
    let beta = vec_ops::dot(&pi, &j.mul_vec(&x0));
    if beta.is_zero() {
        return x0;
    }
    // Ju ⊄ u since u has odd dimension, so some basis vector moves off u
    let w = u
        .vectors()
        .into_iter()
        .find(|w| !vec_ops::dot(&pi, &j.mul_vec(w)).is_zero())
        .expect("an odd-dimensional subspace is never J-invariant");
    let t = &beta / vec_ops::dot(&pi, &j.mul_vec(&w));
    vec_ops::sub(&x0, &vec_ops::scale(&w, &t))
}

/// Matrix of `ad_x` on `span(basis)` in that basis.
fn ad_in_basis(alg: &LieAlgebra, x: &[Rat], basis: &[QVec]) -> QMat {
    let b = QMat::from_columns(alg.dim(), basis);
    let cols: Vec<QVec> = basis
        .iter()
        .map(|v| b.solve(&alg.bracket(x, v)).expect("u is an ideal"))
        .collect();
    QMat::from_columns(basis.len(), &cols)
}

pub fn thm_complex_blockform(alg: &LieAlgebra, j: &QMat) -> Result<ComplexBlockForm, AaError> {
    let u = detect_ideal(alg)?;
    thm_complex_blockform_with_ideal(alg, j, &u)
}

pub fn thm_complex_blockform_with_ideal(
    alg: &LieAlgebra,
    j: &QMat,
    u: &Subspace,
) -> Result<ComplexBlockForm, AaError> {
    if j.rows() != alg.dim() || !is_almost_complex(j) {
        return Err(CsError::NotAlmostComplex.into());
    }
    check_ideal(alg, u)?;
    let x = adapted_x(u, j);
    let u_j = u.intersection(&u.image(j));
    let mut basis = u_j.vectors();
    let k = basis.len();
    basis.push(j.mul_vec(&x));
    let f = ad_in_basis(alg, &x, &basis);
    let f0 = f.block(0, k, 0, k);
    let lower_left_zero = (0..k).all(|c| f[(k, c)].is_zero());
    let bj = QMat::from_columns(alg.dim(), &basis[..k]);
    let j_cols: Vec<QVec> =
        basis[..k].iter().map(|b| bj.solve(&j.mul_vec(b)).expect("u_J is J-invariant")).collect();
    let j_res = QMat::from_columns(k, &j_cols);
    let f0_commutes = &f0 * &j_res == &j_res * &f0;
    if lower_left_zero && f0_commutes {
        Ok(ComplexBlockForm::Conforms {
            f0,
            v: (0..k).map(|r| f[(r, k)].clone()).collect(),
            a: f[(k, k)].clone(),
        })
    } else {
        Ok(ComplexBlockForm::Violation { lower_left_zero, f0_commutes })
    }
}

pub fn thm_symplectic_blockform(alg: &LieAlgebra, omega: &QMat) -> Result<SymplecticBlockForm, AaError> {
    let u = detect_ideal(alg)?;
    thm_symplectic_blockform_with_ideal(alg, omega, &u)
}

pub fn thm_symplectic_blockform_with_ideal(
    alg: &LieAlgebra,
    omega: &QMat,
    u: &Subspace,
) -> Result<SymplecticBlockForm, AaError> {
    if omega.rows() != alg.dim() || omega.det().is_zero() {
        return Err(AaError::Degenerate);
    }
    check_ideal(alg, u)?;
    let y = symplectic_orthogonal(omega, u).vectors().remove(0);
    let mut basis: Vec<QVec> = Vec::new();
    let mut span = Subspace::span(alg.dim(), core::slice::from_ref(&y));
    for v in u.vectors() {
        if !span.contains(&v) {
            span = span.sum(&Subspace::span(alg.dim(), core::slice::from_ref(&v)));
            basis.push(v);
        }
    }
    let k = basis.len();
    basis.push(y);
    let x = u.coordinate_complement().vectors().remove(0);
    let f = ad_in_basis(alg, &x, &basis);
    let f_prime = f.block(0, k, 0, k);
    let preserves_perp = (0..k).all(|r| f[(r, k)].is_zero());
    let restricted = QMat::from_rows(
        basis[..k]
            .iter()
            .map(|a| basis[..k].iter().map(|b| vec_ops::dot(a, &omega.mul_vec(b))).collect())
            .collect(),
    );
    let f_prime_in_sp = (&(&f_prime.transpose() * &restricted) + &(&restricted * &f_prime)).is_zero();
    if preserves_perp && f_prime_in_sp {
        Ok(SymplecticBlockForm::Conforms {
            f_prime,
            alpha: (0..k).map(|c| f[(k, c)].clone()).collect(),
            a_prime: f[(k, k)].clone(),
        })
    } else {
        Ok(SymplecticBlockForm::Violation { preserves_perp, f_prime_in_sp })
    }
}

/// The adapted splitting `g = u'_J ⊕ ⟨Y, JY, JX, X⟩` of a complex symplectic
/// almost Abelian algebra, with `f = ad_X|_u` read off in the basis
/// `(u'_J, Y, JY, JX)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsSplitting {
    pub u_j_prime: Subspace,
    pub y: QVec,
    pub jy: QVec,
    pub jx: QVec,
    pub x: QVec,
    /// `f` in the adapted basis.
    pub f: QMat,
    pub params: ThmCSParams,
    /// `ω(u'_J, V) = 0`.
    pub orthogonal: bool,
    /// `ω|_V = J*α∧J*β − α∧β` for the duals `α, β` of `Y, X`.
    pub omega_v_matches: bool,
    /// `f` has the `ω(Ju,·)`, `ω(u,·)`, `a, a, −a` shape.
    pub shape_matches: bool,
}

pub fn decompose_cs(alg: &LieAlgebra, s: &CSStructure) -> Result<CsSplitting, AaError> {
    let report = verify_cs(alg, s)?;
    if !report.verdict {
        return Err(CsError::NotComplexSymplectic(report).into());
    }
    let u = detect_ideal(alg)?;
    let (j, om) = (s.j(), s.omega());
    let n = alg.dim();
    let y0 = symplectic_orthogonal(om, &u).vectors().remove(0);
    let x = adapted_x(&u, j);
    let jx = j.mul_vec(&x);
    let u_j = u.intersection(&u.image(j));
    let u_j_prime = u_j.intersection(&symplectic_orthogonal(om, &Subspace::span(n, &[x.clone(), jx.clone()])));
    let scale = s.pair(&j.mul_vec(&y0), &jx);
    if scale.is_zero() {
        return Err(AaError::Degenerate);
    }
    let y = vec_ops::scale(&y0, &(Rat::one() / scale));
    let jy = j.mul_vec(&y);

    let inner = u_j_prime.vectors();
    let v_basis = [y.clone(), jy.clone(), jx.clone(), x.clone()];
    let orthogonal = inner.iter().all(|a| v_basis.iter().all(|b| s.pair(a, b).is_zero()));

    // dual basis of (inner, Y, JY, JX, X)
    let mut all = inner.clone();
    all.extend(v_basis.iter().cloned());
    let p = QMat::from_columns(n, &all);
    let dual = p.inverse().ok_or(AaError::Degenerate)?;
    let k = inner.len();
    let alpha = dual.row(k);
    let beta = dual.row(k + 3);
    let j_alpha = j.transpose().mul_vec(&alpha);
    let j_beta = j.transpose().mul_vec(&beta);
    let wedge = |a: &QVec, b: &QVec, x1: &QVec, x2: &QVec| {
        vec_ops::dot(a, x1) * vec_ops::dot(b, x2) - vec_ops::dot(a, x2) * vec_ops::dot(b, x1)
    };
    let omega_v_matches = v_basis.iter().all(|p1| {
        v_basis.iter().all(|p2| {
            s.pair(p1, p2) == wedge(&j_alpha, &j_beta, p1, p2) - wedge(&alpha, &beta, p1, p2)
        })
    });

    let mut u_basis = inner.clone();
    u_basis.extend([y.clone(), jy.clone(), jx.clone()]);
    let f = ad_in_basis(alg, &x, &u_basis);
    let params = ThmCSParams {
        f_j: f.block(0, k, 0, k),
        a: f[(k, k)].clone(),
        b: f[(k, k + 2)].clone(),
        c: f[(k + 1, k + 2)].clone(),
        u: (0..k).map(|r| f[(r, k + 2)].clone()).collect(),
    };
    let u_vec = QMat::from_columns(n, &inner).mul_vec(&params.u);
    let ju = j.mul_vec(&u_vec);
    let mut shape_matches = f[(k, k + 1)].is_zero()
        && f[(k + 1, k)].is_zero()
        && f[(k + 1, k + 1)] == params.a
        && f[(k + 2, k + 2)] == -&params.a
        && (0..k + 2).all(|c| f[(k + 2, c)].is_zero())
        && (0..k).all(|r| f[(r, k)].is_zero() && f[(r, k + 1)].is_zero());
    for (c, z) in inner.iter().enumerate() {
        shape_matches &= f[(k, c)] == s.pair(&ju, z) && f[(k + 1, c)] == s.pair(&u_vec, z);
    }
    Ok(CsSplitting {
        u_j_prime,
        y,
        jy,
        jx,
        x,
        f,
        params,
        orthogonal,
        omega_v_matches,
        shape_matches,
    })
}
