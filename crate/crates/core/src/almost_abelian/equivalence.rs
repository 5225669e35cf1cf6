//! Changes of adapted basis preserving `(J_0, ω_0)` and their effect on `f`.

use num_traits::{One, Zero};

use super::{assemble_f, canonical_j0_omega0, j0_inner, omega0_inner, read_params, AaError, ThmCSParams};
use crate::matrix::QMat;
use crate::rat::{vec_ops, QVec, Rat};

/// Data of an isomorphism between two algebras in adapted form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceMove {
    /// Acts on `u'_J`; must commute with `J_0` and preserve `ω_0` there.
    pub delta: QMat,
    pub lambda: Rat,
    pub mu1: Rat,
    pub mu2: Rat,
    pub u_x: QVec,
}

impl EquivalenceMove {
    pub fn identity(n: usize) -> Self {
        let s = 4 * n - 4;
        EquivalenceMove {
            delta: QMat::identity(s),
            lambda: Rat::one(),
            mu1: Rat::zero(),
            mu2: Rat::zero(),
            u_x: vec_ops::zeros(s),
        }
    }
}

/// The transformed `f̃`, the isomorphism `K̃`, and the checked identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceResult {
    pub f_tilde: QMat,
    pub k_tilde: QMat,
    /// `K̃|_u · f = λ · f̃ · K̃|_u`.
    pub intertwines: bool,
    pub commutes_with_j0: bool,
    pub preserves_omega0: bool,
}

impl EquivalenceResult {
    pub fn all_hold(&self) -> bool {
        self.intertwines && self.commutes_with_j0 && self.preserves_omega0
    }
}

pub fn apply_equivalence(f: &QMat, mv: &EquivalenceMove) -> Result<EquivalenceResult, AaError> {
    let p = read_params(f)?;
    let s = p.f_j.rows();
    let (delta, lambda) = (&mv.delta, &mv.lambda);
    if delta.rows() != s || delta.cols() != s || mv.u_x.len() != s || lambda.is_zero() {
        return Err(AaError::InvalidMove);
    }
    let jn = j0_inner(s);
    let om = omega0_inner(s);
    if delta * &jn != &jn * delta || &(&delta.transpose() * &om) * delta != om {
        return Err(AaError::InvalidMove);
    }
    let delta_inv = delta.inverse().ok_or(AaError::InvalidMove)?;
    let pair = |v: &[Rat], w: &[Rat]| vec_ops::dot(v, &om.mul_vec(w));
    let inv = Rat::one() / lambda;
    let l2 = lambda * lambda;
    let l3 = &l2 * lambda;

    let a_tilde = (&(delta * &p.f_j) * &delta_inv).scale(&inv);
    let ju_x = jn.mul_vec(&mv.u_x);
    let du = delta.mul_vec(&p.u);
    let mut u_acc = vec_ops::sub(&du, &vec_ops::scale(&ju_x, &p.a));
    u_acc = vec_ops::sub(&u_acc, &vec_ops::scale(&a_tilde.mul_vec(&ju_x), lambda));
    let u_tilde = vec_ops::scale(&u_acc, &(Rat::one() / &l2));
    let w = vec_ops::add(&du, &vec_ops::scale(&u_tilde, &l2));
    let two_la = Rat::from_integer(2.into()) * lambda * &p.a;
    let b_tilde = (&p.b + &two_la * &mv.mu2 - pair(&mv.u_x, &w)) / &l3;
    let c_tilde = (&p.c - &two_la * &mv.mu1 + pair(&ju_x, &w)) / &l3;
    let f_tilde = assemble_f(&ThmCSParams {
        f_j: a_tilde,
        a: &p.a / lambda,
        b: b_tilde,
        c: c_tilde,
        u: u_tilde,
    });

    let dim = s + 4;
    let mut k = QMat::zeros(dim, dim);
    k.set_block(0, 0, delta);
    // rows Y and JY on u'_J: ∓(1/λ)·ω(v, Δ·) with v = ũ_X, Jũ_X
    let row_y = (&delta.transpose() * &om.transpose()).mul_vec(&mv.u_x);
    let row_jy = (&delta.transpose() * &om.transpose()).mul_vec(&ju_x);
    for c in 0..s {
        k[(s, c)] = -&row_y[c] * &inv;
        k[(s + 1, c)] = &row_jy[c] * &inv;
        k[(c, s + 2)] = ju_x[c].clone();
        k[(c, s + 3)] = mv.u_x[c].clone();
    }
    k[(s, s)] = inv.clone();
    k[(s + 1, s + 1)] = inv.clone();
    k[(s, s + 2)] = -&mv.mu2;
    k[(s + 1, s + 2)] = mv.mu1.clone();
    k[(s, s + 3)] = mv.mu1.clone();
    k[(s + 1, s + 3)] = mv.mu2.clone();
    k[(s + 2, s + 2)] = lambda.clone();
    k[(s + 3, s + 3)] = lambda.clone();

    let cs = canonical_j0_omega0(dim / 4);
    let k_u = k.block(0, s + 3, 0, s + 3);
    let intertwines = &k_u * f == (&f_tilde * &k_u).scale(lambda);
    let commutes_with_j0 = &k * cs.j() == cs.j() * &k;
    let preserves_omega0 = &(&k.transpose() * cs.omega()) * &k == *cs.omega();
    Ok(EquivalenceResult { f_tilde, k_tilde: k, intertwines, commutes_with_j0, preserves_omega0 })
}
