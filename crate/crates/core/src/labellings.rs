//! Cartier vertex labellings, the multidegree operator `δ`, component groups
//! `H = coker δ`, and descent of vertex labellings along blow-ups.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{nth_blowup, BlowupGraph, LabelledGraph};
use crate::zlinalg::{coker_invariants, congruence_lattice, image_lattice, snf, Congruence, IntMatrix, LatticeBasis, Modulus, SnfDecomposition};

/// An integer per vertex, indexed like the graph's vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexLabelling {
    values: Vec<BigInt>,
}

impl VertexLabelling {
    pub fn new(values: Vec<BigInt>) -> VertexLabelling {
        VertexLabelling { values }
    }

    pub fn from_i64(values: &[i64]) -> VertexLabelling {
        VertexLabelling { values: values.iter().map(|&v| BigInt::from(v)).collect() }
    }

    pub fn zeros(n: usize) -> VertexLabelling {
        VertexLabelling { values: vec![BigInt::zero(); n] }
    }

    /// `χ_v`: one at `v`, zero elsewhere.
    pub fn indicator(n: usize, v: usize) -> VertexLabelling {
        let mut l = Self::zeros(n);
        l.values[v] = BigInt::one();
        l
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigInt> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> BigInt {
        self.values.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    fn check_len(&self, g: &LabelledGraph) -> Result<()> {
        if self.len() != g.vertex_count() {
            return Err(Error::DimensionMismatch { expected: g.vertex_count(), found: self.len() });
        }
        Ok(())
    }
}

impl Index<usize> for VertexLabelling {
    type Output = BigInt;

    fn index(&self, v: usize) -> &BigInt {
        &self.values[v]
    }
}

impl From<Vec<BigInt>> for VertexLabelling {
    fn from(values: Vec<BigInt>) -> Self {
        VertexLabelling { values }
    }
}

/// A vertex labelling known to be Cartier on the graph it was checked against.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartierLabelling(VertexLabelling);

impl CartierLabelling {
    pub fn new(g: &LabelledGraph, phi: VertexLabelling) -> Result<CartierLabelling> {
        phi.check_len(g)?;
        match first_violation(g, &phi) {
            Some(e) => Err(Error::NotCartier(g.edge(e).id.clone())),
            None => Ok(CartierLabelling(phi)),
        }
    }

    pub fn labelling(&self) -> &VertexLabelling {
        &self.0
    }

    pub fn into_labelling(self) -> VertexLabelling {
        self.0
    }
}

impl Index<usize> for CartierLabelling {
    type Output = BigInt;

    fn index(&self, v: usize) -> &BigInt {
        &self.0[v]
    }
}

/// Values below `2^40` in absolute value, so differences stay below `2^41`
/// and sums of quotients cannot overflow.
fn small_values(phi: &[BigInt]) -> Option<Vec<i64>> {
    phi.iter().map(|v| v.to_i64().filter(|x| x.unsigned_abs() < 1 << 40)).collect()
}

/// `diff / m` for `|diff| < 2^41`, truncated; a larger label divides only zero.
fn small_quotient(diff: i64, m: u64) -> Option<i64> {
    if m > 1 << 41 {
        return (diff == 0).then_some(0);
    }
    let m = m as i64;
    (diff % m == 0).then_some(diff / m)
}

/// The first edge across which `phi` is not Cartier.
pub fn first_violation(g: &LabelledGraph, phi: &VertexLabelling) -> Option<usize> {
    if let Some(small) = small_values(phi.values()) {
        return g.edges().iter().position(|e| {
            let diff = small[e.source] - small[e.target];
            match e.label.value() {
                Some(m) => small_quotient(diff, m).is_none(),
                None => diff != 0,
            }
        });
    }
    g.edges().iter().position(|e| {
        let diff = &phi[e.source] - &phi[e.target];
        match e.label.value() {
            Some(m) => !diff.is_multiple_of(&BigInt::from(m)),
            None => !diff.is_zero(),
        }
    })
}

/// Whether `phi` is Cartier, with the first violating edge if not.
pub fn is_cartier(g: &LabelledGraph, phi: &VertexLabelling) -> (bool, Option<usize>) {
    let v = first_violation(g, phi);
    (v.is_none(), v)
}

/// The lattice `C ⊂ Z^V` of Cartier vertex labellings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartierLattice {
    pub basis: LatticeBasis,
}

impl CartierLattice {
    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn vectors(&self) -> Vec<VertexLabelling> {
        self.basis.vectors().into_iter().map(VertexLabelling::new).collect()
    }

    pub fn contains(&self, phi: &VertexLabelling) -> bool {
        self.basis.contains(phi.values())
    }

    /// `sum coords[i] * basis[i]`
    pub fn combine(&self, coords: &[BigInt]) -> VertexLabelling {
        VertexLabelling::new(self.basis.combine(coords))
    }
}

/// Basis of `C`, one congruence `χ_v - χ_w ≡ 0 (mod l(e))` per non-loop edge.
pub fn cartier_basis(g: &LabelledGraph) -> CartierLattice {
    let n = g.vertex_count();
    let constraints: Vec<Congruence> = g
        .edges()
        .iter()
        .filter(|e| !e.is_loop() && !e.label.is_one())
        .map(|e| {
            let mut row = vec![BigInt::zero(); n];
            row[e.source] += 1;
            row[e.target] -= 1;
            let modulus = e.label.value().map_or(Modulus::Infinite, |m| Modulus::Finite(BigInt::from(m)));
            Congruence { row, modulus }
        })
        .collect();
    let basis = congruence_lattice(n, &constraints).expect("rows have the ambient dimension");
    CartierLattice { basis }
}

fn multidegree_unchecked(g: &LabelledGraph, phi: &[BigInt]) -> Vec<BigInt> {
    if g.edge_count() < 1 << 16 {
        if let Some(small) = small_values(phi) {
            let mut deg = vec![0i64; g.vertex_count()];
            for e in g.edges() {
                let Some(m) = e.label.value() else { continue };
                if e.is_loop() {
                    continue;
                }
                let q = small_quotient(small[e.target] - small[e.source], m).unwrap_or(0);
                deg[e.source] += q;
                deg[e.target] -= q;
            }
            return deg.into_iter().map(BigInt::from).collect();
        }
    }
    let mut deg = vec![BigInt::zero(); g.vertex_count()];
    for e in g.edges() {
        let Some(m) = e.label.value() else { continue };
        if e.is_loop() {
            continue;
        }
        let q = (&phi[e.target] - &phi[e.source]) / BigInt::from(m);
        deg[e.source] += &q;
        deg[e.target] -= &q;
    }
    deg
}

/// `δφ(v) = Σ (φ(w) - φ(v)) / l(e)` over edges at `v`; loops and infinite
/// edges contribute nothing.
pub fn multidegree(g: &LabelledGraph, phi: &VertexLabelling) -> Result<VertexLabelling> {
    phi.check_len(g)?;
    if let Some(e) = first_violation(g, phi) {
        return Err(Error::NotCartier(g.edge(e).id.clone()));
    }
    Ok(VertexLabelling::new(multidegree_unchecked(g, phi.values())))
}

/// Matrix of `δ: C -> Z^V` with respect to the basis of `c`.
pub fn delta_matrix_in(g: &LabelledGraph, c: &CartierLattice) -> IntMatrix {
    let mut d = IntMatrix::zeros(g.vertex_count(), c.rank());
    for (j, b) in c.basis.vectors().iter().enumerate() {
        for (i, v) in multidegree_unchecked(g, b).into_iter().enumerate() {
            d[(i, j)] = v;
        }
    }
    d
}

/// Matrix of `δ` in the basis returned by [`cartier_basis`].
pub fn delta_matrix(g: &LabelledGraph) -> IntMatrix {
    delta_matrix_in(g, &cartier_basis(g))
}

/// A finitely generated abelian group `Z^free ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentGroup {
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl ComponentGroup {
    pub fn of_cokernel(m: &IntMatrix) -> ComponentGroup {
        let (free_rank, torsion) = coker_invariants(m);
        ComponentGroup { free_rank, torsion }
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl fmt::Display for ComponentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `H = coker(δ: C -> Z^V)`.
pub fn component_group(g: &LabelledGraph) -> ComponentGroup {
    ComponentGroup::of_cokernel(&delta_matrix(g))
}

/// Whether `α` lies in the image of `δ` on `C`, i.e. is zero in `H`.
pub fn in_delta_image(g: &LabelledGraph, alpha: &VertexLabelling) -> Result<bool> {
    alpha.check_len(g)?;
    Ok(image_lattice(&delta_matrix(g)).contains(alpha.values()))
}

fn check_blowup(g: &LabelledGraph, target: &BlowupGraph) -> Result<()> {
    if target.is_blowup_of(g) {
        Ok(())
    } else {
        Err(Error::NotABlowupOf)
    }
}

/// `ι(φ)`: linear interpolation of `φ` along every subdivided edge. At a
/// vertex at weighted distance `k` from the source `v` of an edge `(v, w)`
/// with label `l`, the value is `((l - k) φ(v) + k φ(w)) / l`. Along infinite
/// edges the value is constant.
pub fn iota_interpolate(g: &LabelledGraph, target: &BlowupGraph, phi: &CartierLabelling) -> Result<CartierLabelling> {
    check_blowup(g, target)?;
    phi.labelling().check_len(g)?;
    if let Some(e) = first_violation(g, phi.labelling()) {
        return Err(Error::NotCartier(g.edge(e).id.clone()));
    }
    let h = target.graph();
    let mut values = vec![BigInt::zero(); h.vertex_count()];
    for v in 0..g.vertex_count() {
        values[target.image_of(v)] = phi[v].clone();
    }
    for (edge, path) in g.edges().iter().zip(target.paths()) {
        let (a, b) = (&phi[edge.source], &phi[edge.target]);
        let Some(l) = edge.label.value() else {
            for &u in &path.vertices {
                values[u] = a.clone();
            }
            continue;
        };
        let l = BigInt::from(l);
        let mut k = BigInt::zero();
        for (i, &u) in path.vertices.iter().enumerate().skip(1) {
            let step = h.edge(path.edges[i - 1]).label.value().expect("finite edges subdivide into finite edges");
            k += step;
            if i + 1 < path.vertices.len() {
                values[u] = ((&l - &k) * a + &k * b) / &l;
            }
        }
        debug_assert_eq!(k, l, "path labels sum to the edge label");
    }
    CartierLabelling::new(h, VertexLabelling::new(values))
}

/// `ε(α)`: `α` on old vertices, zero on new ones.
pub fn epsilon_extend(g: &LabelledGraph, target: &BlowupGraph, alpha: &VertexLabelling) -> Result<VertexLabelling> {
    check_blowup(g, target)?;
    alpha.check_len(g)?;
    let h = target.graph();
    let mut values = vec![BigInt::zero(); h.vertex_count()];
    for v in 0..g.vertex_count() {
        values[target.image_of(v)] = alpha[v].clone();
    }
    Ok(VertexLabelling::new(values))
}

/// Precomputed data for repeated descent problems on one blow-up graph.
///
/// For `α` on the blow-up, finds a Cartier `φ` with `δφ + α` zero on every
/// new vertex by solving `A y = -α|new` where `A` holds the rows of the
/// `δ`-matrix at new vertices and `y` are coordinates in the Cartier basis.
#[derive(Debug, Clone)]
pub struct DescentSolver {
    target: BlowupGraph,
    lattice: CartierLattice,
    new_vertices: Vec<usize>,
    system: SnfDecomposition,
}

impl DescentSolver {
    pub fn new(target: &BlowupGraph) -> DescentSolver {
        let h = target.graph();
        let lattice = cartier_basis(h);
        let new_vertices = target.new_vertices();
        let a = delta_matrix_in(h, &lattice).select_rows(&new_vertices);
        DescentSolver { target: target.clone(), lattice, new_vertices, system: snf(&a) }
    }

    pub fn target(&self) -> &BlowupGraph {
        &self.target
    }

    pub fn lattice(&self) -> &CartierLattice {
        &self.lattice
    }

    /// A witness `φ`, or `None` if no Cartier labelling works.
    pub fn solve(&self, alpha: &VertexLabelling) -> Result<Option<CartierLabelling>> {
        let h = self.target.graph();
        alpha.check_len(h)?;
        let rhs: Vec<BigInt> = self.new_vertices.iter().map(|&v| -&alpha[v]).collect();
        let Some(y) = self.system.solve(&rhs)? else { return Ok(None) };
        let phi = self.lattice.combine(&y);
        Ok(Some(CartierLabelling::new(h, phi)?))
    }

    /// Whether `χ_v` descends for every new vertex `v`.
    pub fn all_new_indicators_descend(&self) -> bool {
        let n = self.target.graph().vertex_count();
        self.new_vertices
            .iter()
            .all(|&v| matches!(self.solve(&VertexLabelling::indicator(n, v)), Ok(Some(_))))
    }
}

/// A Cartier `φ` on the blow-up with `δφ + α` zero on all new vertices, or
/// `None` if none exists.
pub fn descent_solve(target: &BlowupGraph, alpha: &VertexLabelling) -> Result<Option<CartierLabelling>> {
    DescentSolver::new(target).solve(alpha)
}

/// `δφ + α` restricted to old vertices and indexed by base vertices. Fails if
/// it is nonzero at some new vertex.
pub fn pushforward_multidegree(
    target: &BlowupGraph,
    alpha: &VertexLabelling,
    phi: &CartierLabelling,
) -> Result<VertexLabelling> {
    let h = target.graph();
    alpha.check_len(h)?;
    let d = multidegree(h, phi.labelling())?;
    let total: Vec<BigInt> = d.values().iter().zip(alpha.values()).map(|(a, b)| a + b).collect();
    if let Some(v) = target.new_vertices().into_iter().find(|&v| !total[v].is_zero()) {
        return Err(Error::SupportConditionViolated(h.vertex_id(v).into()));
    }
    let base = target.base();
    Ok(VertexLabelling::new((0..base.vertex_count()).map(|v| total[target.image_of(v)].clone()).collect()))
}

/// Whether `H -> H_n` induced by `ε` is an isomorphism. It is always
/// injective, so this tests surjectivity: `χ_v` must descend for every new
/// vertex `v` of the `n`-th blow-up.
pub fn h_map_is_iso(g: &LabelledGraph, n: u32) -> bool {
    if n == 0 {
        return true;
    }
    DescentSolver::new(&nth_blowup(g, n)).all_new_indicators_descend()
}
