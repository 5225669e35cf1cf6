//! Worked solution families: `h_7` with nilpotent `ρ`, the case `ρ = 0` on an
//! abelian `h`, and abelian `h` with `ρ̂` of full rank.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{check_conditions, Alpha, Check, CotError, CotangentData};
use crate::almost_abelian::j0_inner;
use crate::csgeom::two_form;
use crate::lie::{parse_salamon, LieAlgebra};
use crate::matrix::QMat;
use crate::rat::{int, vec_ops, QVec, Rat};
use crate::subspace::Subspace;

/// `h_7 = (0,0,0,12,13,23)`.
pub fn h7_algebra() -> LieAlgebra {
    parse_salamon("(0,0,0,12,13,23)").expect("valid Salamon string")
}

/// `J e1 = −e2, J e3 = e4, J e5 = −e6`.
pub fn h7_complex_structure() -> QMat {
    let mut j = QMat::zeros(6, 6);
    for (a, b, s) in [(0, 1, -1), (2, 3, 1), (4, 5, -1)] {
        j[(b, a)] = int(s);
        j[(a, b)] = int(-s);
    }
    j
}

/// The free entries `ρ¹_{kl}` of `ρ(e_1)`; `ρ³_{kl}` vanish.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct H7Params {
    pub r13: Rat,
    pub r14: Rat,
    pub r15: Rat,
    pub r16: Rat,
    pub r23: Rat,
    pub r24: Rat,
    pub r25: Rat,
    pub r26: Rat,
    pub r35: Rat,
    pub r36: Rat,
    pub r45: Rat,
    pub r46: Rat,
}

/// `((1 − m²)/(1 + m²), 2m/(1 + m²))`, a rational point `(cos t, sin t)`.
pub fn rational_circle_point(m: &Rat) -> (Rat, Rat) {
    let m2 = m * m;
    let den = Rat::one() + &m2;
    ((Rat::one() - &m2) / &den, (m + m) / &den)
}

pub(crate) fn h7_rho(p: &H7Params) -> Vec<QMat> {
    let z = Rat::zero;
    let one = Rat::one;
    let row = |c: [Rat; 4]| -> QVec {
        let [a, b, c5, c6] = c;
        vec![z(), z(), a, b, c5, c6]
    };
    let zero_row = || vec_ops::zeros(6);
    let pad = |rows: Vec<QVec>| {
        let mut rows = rows;
        rows.resize(6, zero_row());
        QMat::from_rows(rows)
    };
    let e1 = pad(vec![
        row([p.r13.clone(), p.r14.clone(), p.r15.clone(), p.r16.clone()]),
        row([p.r23.clone(), p.r24.clone(), p.r25.clone(), p.r26.clone()]),
        row([z(), z(), p.r35.clone(), p.r36.clone()]),
        row([z(), z(), p.r45.clone(), p.r46.clone()]),
    ]);
    let e2 = pad(vec![
        row([p.r23.clone(), &p.r24 - one(), p.r25.clone(), p.r26.clone()]),
        row([-&p.r13 - one(), -&p.r14, -&p.r15, -&p.r16]),
        row([z(), z(), -&p.r45, -&p.r46]),
        row([z(), z(), p.r35.clone(), p.r36.clone()]),
    ]);
    let e3 = pad(vec![
        row([z(), z(), &p.r35 - one(), p.r36.clone()]),
        row([z(), z(), -&p.r45, -&p.r46 - one()]),
    ]);
    let e4 = pad(vec![
        row([z(), z(), p.r45.clone(), p.r46.clone()]),
        row([z(), z(), p.r35.clone(), p.r36.clone()]),
    ]);
    vec![e1, e2, e3, e4, QMat::zeros(6, 6), QMat::zeros(6, 6)]
}

/// Family `k ∈ 1..=4` of nilpotent solutions on `h_7` with `α = 0`. The
/// dependent entries of `params` are overwritten by the family relations;
/// family 4 needs `(cos t, sin t)` with `sin t ≠ 0`.
pub fn h7_solution_family(k: u8, params: &H7Params, circle: Option<(Rat, Rat)>) -> Result<CotangentData, CotError> {
    let mut p = params.clone();
    let two = int(2);
    match k {
        1 => {
            p.r23 = p.r14.clone();
            p.r24 = -&two - &p.r13;
            p.r45 = Rat::zero();
            p.r46 = Rat::zero();
        }
        2 => {
            p.r23 = p.r14.clone();
            p.r24 = &two - &p.r13;
            p.r35 = Rat::zero();
            p.r36 = Rat::zero();
        }
        3 => {
            for r in [&mut p.r35, &mut p.r36, &mut p.r45, &mut p.r46] {
                *r = Rat::zero();
            }
        }
        4 => {
            let (cos, sin) = circle.ok_or(CotError::Constraint("family 4 needs a point (cos t, sin t)"))?;
            if &cos * &cos + &sin * &sin != Rat::one() {
                return Err(CotError::Constraint("(cos t, sin t) must lie on the unit circle"));
            }
            if sin.is_zero() {
                return Err(CotError::Constraint("t must avoid 0 and π"));
            }
            let ratio = (&cos + Rat::one()) / &sin;
            p.r23 = &p.r14 + &two * &sin;
            p.r24 = -&p.r13 + &two * &cos;
            p.r45 = &ratio * &p.r35;
            p.r46 = &ratio * &p.r36;
        }
        _ => return Err(CotError::Constraint("family index must be 1..=4")),
    }
    CotangentData::new(h7_algebra(), h7_complex_structure(), h7_rho(&p), Alpha::zero(6))
}

/// The named 2-forms `ω_1..ω_4, σ_1, σ_2` on `R^4`.
pub fn rho_zero_forms() -> [QMat; 6] {
    let f = |terms: &[(usize, usize, i64)]| {
        two_form(4, &terms.iter().map(|&(i, j, c)| (i, j, int(c))).collect::<Vec<_>>())
    };
    [
        f(&[(0, 1, 1)]),
        f(&[(2, 3, 1)]),
        f(&[(0, 2, 1), (1, 3, 1)]),
        f(&[(0, 3, 1), (1, 2, -1)]),
        f(&[(0, 2, 1), (1, 3, -1)]),
        f(&[(0, 3, 1), (1, 2, 1)]),
    ]
}

/// First `(j, x, y)` where `α_{2j+1} + iα_{2j+2}` has a nonzero `(0,2)`-part
/// `β(X,Y) − β(JX,JY) + i(β(JX,Y) + β(X,JY))`.
pub fn no_02_part_witness(alpha: &Alpha, jh: &QMat) -> Option<Vec<usize>> {
    let m = alpha.dim();
    let jc = jh.columns();
    let e = |i: usize| vec_ops::unit(m, i);
    for j in 0..m / 2 {
        let (a, b) = (alpha.component(2 * j), alpha.component(2 * j + 1));
        let form = |f: &QMat, x: &[Rat], y: &[Rat]| vec_ops::dot(x, &f.mul_vec(y));
        for x in 0..m {
            for y in 0..m {
                let (ex, ey) = (e(x), e(y));
                let turned = |f: &QMat| form(f, &jc[x], &ey) + form(f, &ex, &jc[y]);
                let re = form(&a, &ex, &ey) - form(&a, &jc[x], &jc[y]) - turned(&b);
                let im = form(&b, &ex, &ey) - form(&b, &jc[x], &jc[y]) + turned(&a);
                if !re.is_zero() || !im.is_zero() {
                    return Some(vec![j, x, y]);
                }
            }
        }
    }
    None
}

/// Abelian `h = R^{2n}` with `J e_{2j−1} = −e_{2j}`, `ρ = 0` and the given `α`,
/// after checking the Bianchi identity and the absence of a `(0,2)`-part.
pub fn rho_zero_builder(h_dim: usize, alpha: Alpha) -> Result<CotangentData, CotError> {
    if !h_dim.is_multiple_of(2) || alpha.dim() != h_dim {
        return Err(CotError::Shape("α must live on an even-dimensional h"));
    }
    let jh = j0_inner(h_dim);
    let data = CotangentData::new(LieAlgebra::abelian(h_dim), jh, vec![QMat::zeros(h_dim, h_dim); h_dim], alpha)?;
    if let Some(w) = check_conditions(&data).c3_bianchi.witness {
        return Err(CotError::Condition { condition: 3, witness: w });
    }
    if let Some(w) = no_02_part_witness(data.alpha(), data.jh()) {
        return Err(CotError::Condition { condition: 4, witness: w });
    }
    Ok(data)
}

/// `ρ̂(e_i, e_j)` at index `i·m + j`, from `φ(ρ̂(X,Y)) = ρ(X)(φ)(Y)`.
pub fn rho_hat(d: &CotangentData) -> Vec<QVec> {
    let m = d.half_dim();
    let mut out = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            out.push((0..m).map(|k| d.rho()[i][(j, k)].clone()).collect());
        }
    }
    out
}

/// Inverse of [`rho_hat`].
pub fn rho_from_hat(m: usize, hat: &[QVec]) -> Vec<QMat> {
    (0..m)
        .map(|i| {
            let mut r = QMat::zeros(m, m);
            for j in 0..m {
                for k in 0..m {
                    r[(j, k)] = hat[i * m + j][k].clone();
                }
            }
            r
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullRankReport {
    pub full_rank: bool,
    /// `ρ̂ ∈ S²h* ⊗ h`; witness `(i, j)`.
    pub symmetric: Check,
    /// `ρ̂(ρ̂(·,·),·) ∈ S³h* ⊗ h`; witness `(i, j, k)`.
    pub cubic_symmetric: Check,
    /// `ρ̂(JY,JZ) = −ρ̂(Y,Z)`; witness `(i, j)`.
    pub j_anti: Check,
    /// Some `X` with `ρ̂(X,·) = id`.
    pub identity_element: Option<QVec>,
    /// `ρ̂(JX,·) = J` for that `X`.
    pub j_element: bool,
}

impl FullRankReport {
    pub fn all_hold(&self) -> bool {
        self.full_rank
            && self.symmetric.holds
            && self.cubic_symmetric.holds
            && self.j_anti.holds
            && self.identity_element.is_some()
            && self.j_element
    }
}

pub fn fullrank_report(d: &CotangentData) -> Result<FullRankReport, CotError> {
    if !d.h().is_abelian() {
        return Err(CotError::Precondition("h must be abelian"));
    }
    let m = d.half_dim();
    let hat = rho_hat(d);
    let at = |i: usize, j: usize| &hat[i * m + j];
    let eval = |x: &[Rat], y: &[Rat]| {
        let mut out = vec_ops::zeros(m);
        for i in 0..m {
            for j in 0..m {
                let c = &x[i] * &y[j];
                if !c.is_zero() {
                    vec_ops::axpy(&mut out, &c, at(i, j));
                }
            }
        }
        out
    };
    let e = |i: usize| vec_ops::unit(m, i);
    let jc = d.jh().columns();

    let full_rank = Subspace::span(m, &hat).is_full();
    let pairs = || (0..m).flat_map(|i| (0..m).map(move |j| (i, j)));
    let symmetric = pairs().find(|&(i, j)| at(i, j) != at(j, i)).map(|(i, j)| vec![i, j]);
    let cubic = |i: usize, j: usize, k: usize| eval(at(i, j), &e(k));
    let cubic_symmetric = pairs()
        .flat_map(|(i, j)| (0..m).map(move |k| (i, j, k)))
        .find(|&(i, j, k)| cubic(i, j, k) != cubic(i, k, j) || cubic(i, j, k) != cubic(j, i, k))
        .map(|(i, j, k)| vec![i, j, k]);
    let j_anti = pairs()
        .find(|&(i, j)| eval(&jc[i], &jc[j]) != vec_ops::neg(at(i, j)))
        .map(|(i, j)| vec![i, j]);

    // Σ_i x_i ρ̂(e_i, e_j)_k = δ_jk
    let mut system = QMat::zeros(m * m, m);
    let mut rhs = vec_ops::zeros(m * m);
    for j in 0..m {
        for k in 0..m {
            for i in 0..m {
                system[(j * m + k, i)] = at(i, j)[k].clone();
            }
            if j == k {
                rhs[j * m + k] = Rat::one();
            }
        }
    }
    let identity_element = system.solve(&rhs);
    let j_element = identity_element.as_ref().is_some_and(|x| {
        let jx = d.jh().mul_vec(x);
        (0..m).all(|j| eval(&jx, &e(j)) == jc[j])
    });
    Ok(FullRankReport {
        full_rank,
        symmetric: Check::from_witness(symmetric),
        cubic_symmetric: Check::from_witness(cubic_symmetric),
        j_anti: Check::from_witness(j_anti),
        identity_element,
        j_element,
    })
}

/// `J e_{2k−1} = e_{2k}` on `R^m`.
fn standard_j(m: usize) -> QMat {
    -&j0_inner(m)
}

fn fullrank_data(m: usize, extra: &[(usize, usize, QVec)]) -> CotangentData {
    let j = standard_j(m);
    let jc = j.columns();
    let mut hat = vec![vec_ops::zeros(m); m * m];
    for k in 0..m {
        for (i, v) in [(0, vec_ops::unit(m, k)), (1, jc[k].clone())] {
            hat[i * m + k] = v.clone();
            hat[k * m + i] = v;
        }
    }
    for (i, k, v) in extra {
        hat[i * m + k] = v.clone();
        hat[k * m + i] = v.clone();
    }
    CotangentData::new(LieAlgebra::abelian(m), j, rho_from_hat(m, &hat), Alpha::zero(m))
        .expect("abelian h with a complex structure")
}

/// `ρ̂(e_1,·) = id`, `ρ̂(e_2,·) = J` on `R^2`.
pub fn fullrank_dim4() -> CotangentData {
    fullrank_data(2, &[])
}

/// The eight-dimensional normal form: `ρ̂(e_1,·) = id`, `ρ̂(e_2,·) = J`,
/// `ρ̂(e_3,e_3) = −ρ̂(e_4,e_4) = δe_1`, `ρ̂(e_3,e_4) = δe_2`.
pub fn fullrank_dim8(delta: bool) -> CotangentData {
    let d = if delta { Rat::one() } else { Rat::zero() };
    let u = |i: usize| vec_ops::scale(&vec_ops::unit(4, i), &d);
    fullrank_data(4, &[(2, 2, u(0)), (3, 3, vec_ops::neg(&u(0))), (2, 3, u(1))])
}
