//! Lagrangian complements, `J`-invariant Lagrangian ideals, and recovery of the
//! cotangent data from such an ideal.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{build_cotangent, CotError, CotangentData, Alpha};
use crate::csgeom::{is_almost_complex, symplectic_orthogonal, CSStructure};
use crate::lie::LieAlgebra;
use crate::matrix::QMat;
use crate::rat::{frac, vec_ops, QVec};
use crate::subspace::Subspace;

fn is_lagrangian(omega: &QMat, l: &Subspace) -> bool {
    2 * l.dim() == omega.rows() && l.is_isotropic(omega)
}

/// A Lagrangian `J`-invariant complement of `L`: the graph of `f: L^⊥ → L`
/// over the `g`-orthogonal `L^⊥`, where `g = g̃ + g̃(J·,J·)`, `g̃` is the dot
/// product, and `ω(f(u), v) = −½ω(u, v)` on `L^⊥`.
pub fn lagrangian_complement(omega: &QMat, j: &QMat, l: &Subspace) -> Result<Subspace, CotError> {
    let n = omega.rows();
    if !omega.is_square() || j.rows() != n || j.cols() != n || l.ambient_dim() != n {
        return Err(CotError::Shape("Ω, J and L must share the ambient dimension"));
    }
    if omega.transpose() != -omega || omega.det().is_zero() {
        return Err(CotError::Precondition("Ω must be antisymmetric and nondegenerate"));
    }
    if !is_almost_complex(j) {
        return Err(CotError::Precondition("J must square to −I"));
    }
    let jt_omega = &j.transpose() * omega;
    let omega_j = omega * j;
    if jt_omega != omega_j && jt_omega != -&omega_j {
        return Err(CotError::Precondition("J must be symmetric or skew-symmetric for Ω"));
    }
    if !is_lagrangian(omega, l) {
        return Err(CotError::Precondition("L must be Lagrangian"));
    }
    if !l.is_invariant(j) {
        return Err(CotError::Precondition("L must be J-invariant"));
    }

    let g = &QMat::identity(n) + &(&j.transpose() * j);
    let l_vecs = l.vectors();
    let perp = Subspace::kernel_of(&QMat::from_rows(l_vecs.iter().map(|v| g.mul_vec(v)).collect()));
    let u_vecs = perp.vectors();
    let pair = |x: &[_], y: &[_]| vec_ops::dot(x, &omega.mul_vec(y));
    // pairing[b][c] = ω(l_c, u_b), so row b of the system reads Σ_c x_c ω(l_c, u_b)
    let pairing = QMat::from_rows(u_vecs.iter().map(|u| l_vecs.iter().map(|lc| pair(lc, u)).collect()).collect());
    let half = frac(-1, 2);
    let graph: Vec<QVec> = u_vecs
        .iter()
        .map(|u| {
            let rhs: QVec = u_vecs.iter().map(|v| &half * pair(u, v)).collect();
            let x = pairing.solve(&rhs).expect("L and its g-orthogonal are ω-dual");
            let mut w = u.clone();
            for (c, lc) in x.iter().zip(&l_vecs) {
                vec_ops::axpy(&mut w, c, lc);
            }
            w
        })
        .collect();
    Ok(Subspace::span(n, &graph))
}

fn is_j_lagrangian_ideal(alg: &LieAlgebra, s: &CSStructure, c: &Subspace) -> bool {
    is_lagrangian(s.omega(), c) && c.is_invariant(s.j()) && alg.is_ideal(c)
}

/// Smallest `J`-invariant ideal containing `c`.
fn j_ideal_closure(alg: &LieAlgebra, j: &QMat, c: &Subspace) -> Subspace {
    let full = Subspace::full(alg.dim());
    let mut cur = c.clone();
    loop {
        let next = cur.sum(&cur.image(j)).sum(&alg.bracket_space(&full, &cur));
        if next.dim() == cur.dim() {
            return cur;
        }
        cur = next;
    }
}

const SEARCH_BUDGET: usize = 400;

struct Search<'a> {
    alg: &'a LieAlgebra,
    s: &'a CSStructure,
    visited: Vec<Subspace>,
    budget: usize,
}

impl Search<'_> {
    /// Depth-first growth of an isotropic `J`-invariant ideal by one vector of
    /// its ω-orthogonal at a time, closing up after each step.
    fn extend(&mut self, c: Subspace) -> Option<Subspace> {
        if self.budget == 0 || self.visited.contains(&c) {
            return None;
        }
        self.budget -= 1;
        self.visited.push(c.clone());
        if is_j_lagrangian_ideal(self.alg, self.s, &c) {
            return Some(c);
        }
        let n = self.alg.dim();
        let perp = symplectic_orthogonal(self.s.omega(), &c);
        if is_j_lagrangian_ideal(self.alg, self.s, &perp) {
            return Some(perp);
        }
        let mut choices: Vec<QVec> = (0..n).map(|i| vec_ops::unit(n, i)).filter(|v| perp.contains(v)).collect();
        choices.extend(perp.vectors());
        for v in choices {
            if c.contains(&v) {
                continue;
            }
            let next = j_ideal_closure(self.alg, self.s.j(), &c.sum(&Subspace::span(n, &[v])));
            if next.is_isotropic(self.s.omega()) {
                if let Some(found) = self.extend(next) {
                    return Some(found);
                }
            }
        }
        None
    }
}

/// Bounded search for a `J`-invariant Lagrangian ideal. Seeds are the zero
/// space (grown along coordinate vectors first), then `J`-closures of the derived and lower central series terms, the
/// `J`-invariant part of the centre and its closure; each isotropic seed is
/// grown inside its ω-orthogonal. `None` means nothing was found.
pub fn find_j_lagrangian_ideal(alg: &LieAlgebra, s: &CSStructure) -> Option<Subspace> {
    let n = alg.dim();
    if s.dim() != n || !n.is_multiple_of(2) {
        return None;
    }
    let j = s.j();
    let center = alg.center();
    let mut seeds = vec![Subspace::zero(n)];
    let mut push = |c: Subspace| {
        if !seeds.contains(&c) {
            seeds.push(c);
        }
    };
    for t in alg.derived_series().terms.iter().chain(alg.lower_central_series().terms.iter()) {
        push(j_ideal_closure(alg, j, t));
    }
    push(center.intersection(&center.image(j)));
    push(j_ideal_closure(alg, j, &center));
    let g1 = j_ideal_closure(alg, j, &alg.commutator_ideal());
    push(j_ideal_closure(alg, j, &g1.sum(&center.intersection(&center.image(j)))));

    let mut search = Search { alg, s, visited: Vec::new(), budget: SEARCH_BUDGET };
    for seed in seeds {
        if seed.is_isotropic(s.omega()) {
            if let Some(found) = search.extend(seed) {
                return Some(found);
            }
        }
    }
    None
}

/// Recovered data with the basis change `P` whose columns are the images of
/// `(e^1 .. e^{2n}, e_1 .. e_{2n})` in `g`; `P⁻¹` is `σ ⊕ τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    pub data: CotangentData,
    pub iso: QMat,
    /// The complement `l` of the ideal.
    pub complement: Subspace,
    pub brackets_match: bool,
    pub j_commutes: bool,
    pub omega_pullback: bool,
}

impl Reconstruction {
    pub fn round_trip_holds(&self) -> bool {
        self.brackets_match && self.j_commutes && self.omega_pullback
    }
}

pub fn reconstruct_cotangent_data(
    alg: &LieAlgebra,
    s: &CSStructure,
    ideal: &Subspace,
) -> Result<Reconstruction, CotError> {
    let n = alg.dim();
    if s.dim() != n || ideal.ambient_dim() != n || !n.is_multiple_of(4) {
        return Err(CotError::Shape("algebra, structure and ideal must share a dimension divisible by 4"));
    }
    if !is_lagrangian(s.omega(), ideal) {
        return Err(CotError::Precondition("j must be Lagrangian"));
    }
    if !ideal.is_invariant(s.j()) {
        return Err(CotError::Precondition("j must be J-invariant"));
    }
    if !alg.is_ideal(ideal) {
        return Err(CotError::Precondition("j must be an ideal"));
    }
    let m = n / 2;
    let (h, proj, section) = alg.quotient(ideal);
    let jh = &(&proj * s.j()) * &section;
    debug_assert!(ideal.vectors().iter().all(|v| vec_ops::is_zero(&proj.mul_vec(&s.j().mul_vec(v)))));

    let complement = lagrangian_complement(s.omega(), s.j(), ideal)?;
    let l_basis = complement.basis().clone();
    let tau = &proj * &l_basis;
    let lifts = &l_basis * &tau.inverse().expect("the complement maps onto g/j");
    let lift_cols = lifts.columns();

    let u_vecs = ideal.vectors();
    // sigma[i][a] = ω(u_a, l_i)
    let sigma = QMat::from_rows(
        (0..m).map(|i| u_vecs.iter().map(|u| s.pair(u, &lift_cols[i])).collect()).collect(),
    );
    let u_basis = QMat::from_columns(n, &u_vecs);
    let duals = &u_basis * &sigma.inverse().expect("ω pairs j with its complement");

    let mut cols = duals.columns();
    cols.extend(lift_cols);
    let iso = QMat::from_columns(n, &cols);
    let moved = alg.change_basis(&iso);
    let moved_s = s.change_basis(&iso);

    let rho = (0..m)
        .map(|i| QMat::from_columns(m, &(0..m).map(|k| moved.bracket_basis(m + i, k)[..m].to_vec()).collect::<Vec<_>>()))
        .collect();
    let mut alpha = Alpha::zero(m);
    for i in 0..m {
        for j in i + 1..m {
            alpha.set(i, j, moved.bracket_basis(m + i, m + j)[..m].to_vec());
        }
    }
    let data = CotangentData::new(h, jh, rho, alpha)?;
    let (built, built_s) = build_cotangent(&data);
    Ok(Reconstruction {
        brackets_match: built == moved,
        j_commutes: built_s.j() == moved_s.j(),
        omega_pullback: built_s.omega() == moved_s.omega(),
        data,
        iso,
        complement,
    })
}
