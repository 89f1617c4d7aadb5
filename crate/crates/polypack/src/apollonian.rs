//! Apollonian, symmetrized and super-symmetrized groups of Platonic
//! packings, orbit enumeration, and the perfect-square chains.

use std::fmt;
use std::hash::BuildHasher;

use hashbrown::{DefaultHashBuilder, HashTable};
use thiserror::Error;

use crate::lorentz::{
    dilation, reflection, renormalize, Ball, LVector, LorentzError, MobiusMap, Position,
};
use crate::numeric::{Mat, NumericError, Scalar, FLOAT_TOL};
use crate::packing::{dual, first_overlap, BallArrangement, PackingError};
use crate::polytope::{two_cos_pi_over, FaceLattice, PolytopeError, Solid};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ApollonianError {
    #[error("{0} is not a Platonic solid")]
    NotPlatonic(Solid),
    #[error("generator {0} has no unit space-like mirror")]
    BadMirror(String),
    #[error("orbit coloring needs flavor A, cluster has {0}")]
    WrongFlavor(Flavor),
    #[error("perfect squares need p in 3, 4, 5, got {0}")]
    UnsupportedP(usize),
    #[error("no {0} packing has consecutive curvatures {1}")]
    NoSeed(Solid, String),
    #[error(transparent)]
    Lorentz(#[from] LorentzError),
    #[error(transparent)]
    Packing(#[from] PackingError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Which part of a flag a generator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// `s_f`, inversion in a dual ball.
    DualInversion,
    /// `s_v`, inversion in a ball of the packing.
    PrimalInversion,
    /// `r_v`
    VertexSymmetry,
    /// `r_e`
    EdgeSymmetry,
    /// `r_f`
    FaceSymmetry,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Role::DualInversion => "s_f",
            Role::PrimalInversion => "s_v",
            Role::VertexSymmetry => "r_v",
            Role::EdgeSymmetry => "r_e",
            Role::FaceSymmetry => "r_f",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Inversions in the dual balls.
    A,
    /// Inversions in the balls themselves.
    DualA,
    /// `A` together with the symmetries.
    SA,
    /// `SA` together with the inversions in the balls.
    SSA,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Flavor::A => "A",
            Flavor::DualA => "A*",
            Flavor::SA => "SA",
            Flavor::SSA => "SSA",
        };
        f.write_str(s)
    }
}

/// A Lorentz reflection `x ↦ x − 2<x,m>m` in a unit space-like mirror `m`.
#[derive(Clone, Debug)]
pub struct Generator<S> {
    name: String,
    role: Role,
    mirror: LVector<S>,
    twice: LVector<S>,
    map: MobiusMap<S>,
}

impl<S: Scalar> Generator<S> {
    pub fn new(name: impl Into<String>, role: Role, mirror: LVector<S>) -> Result<Self, ApollonianError> {
        let name = name.into();
        let mm = mirror.dot(&mirror);
        if !mm.approx_eq(&S::one(), FLOAT_TOL * mirror.max_abs().max(1.0)) {
            return Err(ApollonianError::BadMirror(name));
        }
        let map = reflection(&mirror)?;
        let twice = mirror.scale(&S::from_i64(2));
        Ok(Generator { name, role, mirror, twice, map })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn mirror(&self) -> &LVector<S> {
        &self.mirror
    }

    pub fn map(&self) -> &MobiusMap<S> {
        &self.map
    }

    pub fn reflect_vector(&self, v: &LVector<S>) -> LVector<S> {
        let p = v.dot(&self.mirror);
        v.sub(&self.twice.scale(&p))
    }

    /// The image of `b`, or `None` when the mirror is orthogonal to it.
    pub fn image(&self, b: &Ball<S>) -> Result<Option<Ball<S>>, LorentzError> {
        let p = b.vector().dot(&self.mirror);
        if p.sign(FLOAT_TOL) == 0 {
            return Ok(None);
        }
        let v = LVector(b.coords().iter().zip(&self.twice.0).map(|(x, m)| x.clone() - p.clone() * m.clone()).collect());
        renormalize(v).map(Some)
    }

    pub fn apply(&self, b: &Ball<S>) -> Result<Ball<S>, LorentzError> {
        Ok(self.image(b)?.unwrap_or_else(|| b.clone()))
    }

    /// `g·self·g`, the reflection in `g(mirror)`.
    pub fn conjugate_by(&self, g: &Generator<S>, name: impl Into<String>) -> Result<Self, ApollonianError> {
        Generator::new(name, self.role, g.reflect_vector(&self.mirror))
    }

    fn mapped(&self, m: &MobiusMap<S>) -> Result<Self, ApollonianError> {
        Generator::new(self.name.clone(), self.role, m.apply_vector(&self.mirror))
    }
}

#[derive(Clone, Debug)]
pub struct GeneratorSet<S> {
    flavor: Flavor,
    generators: Vec<Generator<S>>,
}

impl<S: Scalar> GeneratorSet<S> {
    pub fn new(flavor: Flavor, generators: Vec<Generator<S>>) -> Self {
        GeneratorSet { flavor, generators }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn generators(&self) -> &[Generator<S>] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Generator<S>> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn with_role(&self, role: Role) -> Option<&Generator<S>> {
        self.generators.iter().find(|g| g.role == role)
    }

    fn mapped(&self, m: &MobiusMap<S>) -> Result<Self, ApollonianError> {
        let generators = self.generators.iter().map(|g| g.mapped(m)).collect::<Result<_, _>>()?;
        Ok(GeneratorSet { flavor: self.flavor, generators })
    }
}

fn vec4<S: Scalar>(c: [S; 4]) -> LVector<S> {
    LVector(c.to_vec())
}

/// `{3,q}` when the solid has triangular faces, otherwise its polar
/// together with `true`.
fn triangular_frame(s: Solid) -> Result<(usize, bool), ApollonianError> {
    match s.platonic_pq() {
        Some((3, q)) => Ok((q, false)),
        Some((p, 3)) => Ok((p, true)),
        _ => Err(ApollonianError::NotPlatonic(s)),
    }
}

/// The five generators of the super-symmetrized group, in the order
/// `s_v, r_v, r_e, r_f, s_f`.
///
/// For `{3,q}` the matrices are `S*, V, E, F_q, S`; the cube and the
/// dodecahedron use the same matrices with the roles of `S*, S` and
/// `V, F_q` exchanged.
pub fn platonic_generators<S: Scalar>(s: Solid) -> Result<GeneratorSet<S>, ApollonianError> {
    let (q, swap) = triangular_frame(s)?;
    let c = two_cos_pi_over::<S>(q)?;
    let h = S::from_ratio(1, 2);
    let (z, o) = (S::zero(), S::one());
    let star = Generator::new("S*", Role::PrimalInversion, vec4([z.clone(), o.clone(), o.clone(), o.clone()]))?;
    let v = Generator::new("V", Role::VertexSymmetry, vec4([z.clone(), o.clone(), z.clone(), z.clone()]))?;
    let e = Generator::new("E", Role::EdgeSymmetry, vec4([z.clone(), h.clone(), -o.clone(), -h]))?;
    let f = Generator::new(format!("F{q}"), Role::FaceSymmetry, vec4([o.clone(), z.clone(), -c.clone(), -c]))?;
    let sf = Generator::new("S", Role::DualInversion, vec4([o, z.clone(), z.clone(), z]))?;
    let generators = if swap {
        let re = |mut g: Generator<S>, r| {
            g.role = r;
            g
        };
        vec![
            re(sf, Role::PrimalInversion),
            re(f, Role::VertexSymmetry),
            e,
            re(v, Role::FaceSymmetry),
            re(star, Role::DualInversion),
        ]
    } else {
        vec![star, v, e, f, sf]
    };
    Ok(GeneratorSet::new(Flavor::SSA, generators))
}

/// Closure of `seeds` under `gens`, without depth bound. Only used for
/// finite groups.
fn finite_orbit<S: Scalar>(seeds: Vec<Ball<S>>, gens: &[Generator<S>]) -> Result<Vec<Ball<S>>, ApollonianError> {
    let mut dedup = Dedup::new();
    let mut out: Vec<Ball<S>> = Vec::new();
    for b in seeds {
        if dedup.find(&b, |i| &out[i]).is_none() {
            out.push(b);
            dedup.insert(out.len() - 1, |i| &out[i]);
        }
    }
    let mut next = 0;
    while next < out.len() {
        for g in gens {
            if let Some(b) = g.image(&out[next])? {
                if dedup.find(&b, |i| &out[i]).is_none() {
                    out.push(b);
                    dedup.insert(out.len() - 1, |i| &out[i]);
                }
            }
        }
        next += 1;
    }
    Ok(out)
}

/// A Platonic disk packing with its dual, both labelled by face lattices.
#[derive(Clone, Debug)]
pub struct PlatonicPacking<S> {
    pub primal: BallArrangement<S>,
    pub dual: BallArrangement<S>,
}

/// The standard packing on which the matrices of [`platonic_generators`]
/// act: the vertex balls are the orbit of the `s_v` mirror under the
/// symmetries, the dual balls the orbit of the `s_f` mirror.
pub fn standard_packing<S: Scalar>(s: Solid) -> Result<PlatonicPacking<S>, ApollonianError> {
    let g = platonic_generators::<S>(s)?;
    let sym: Vec<Generator<S>> = g
        .generators()
        .iter()
        .filter(|x| !matches!(x.role, Role::PrimalInversion | Role::DualInversion))
        .cloned()
        .collect();
    let mirror = |r| g.with_role(r).map(|x| x.mirror.clone()).expect("role present");
    let primal = finite_orbit(vec![Ball::new(mirror(Role::PrimalInversion))?], &sym)?;
    let mut dual_balls = finite_orbit(vec![Ball::new(mirror(Role::DualInversion))?], &sym)?;

    let tangent = |x: &Ball<S>, y: &Ball<S>| x.product(y).approx_eq(&-S::one(), FLOAT_TOL);
    let mut edges = Vec::new();
    for i in 0..primal.len() {
        for j in i + 1..primal.len() {
            if tangent(&primal[i], &primal[j]) {
                edges.push(vec![i, j]);
            }
        }
    }
    let faces: Vec<Vec<usize>> = dual_balls
        .iter()
        .map(|f| (0..primal.len()).filter(|&v| primal[v].product(f).sign(FLOAT_TOL) == 0).collect())
        .collect();
    // dual balls see the vertices off their face with negative products
    if let Some(v) = (0..primal.len()).find(|v| !faces[0].contains(v)) {
        if primal[v].product(&dual_balls[0]).sign(FLOAT_TOL) > 0 {
            dual_balls = dual_balls.iter().map(Ball::complement).collect();
        }
    }
    let lattice = FaceLattice::new(primal.len(), vec![edges, faces]);
    let dual_lattice = lattice.dual();
    Ok(PlatonicPacking {
        primal: BallArrangement::with_lattice(primal, lattice, Some(s)),
        dual: BallArrangement::with_lattice(dual_balls, dual_lattice, Some(s.polar())),
    })
}

/// Names and conjugation chains of the printed Apollonian generators: each
/// entry is conjugated from an earlier one (or from a generator of the
/// super-symmetrized group) by one of `V, E, F_q`.
fn printed_chain(s: Solid) -> Option<Vec<(&'static str, &'static str, &'static str)>> {
    // (name, conjugator, source)
    match s.platonic_pq()? {
        (3, 3) => Some(vec![("T4", "", "S"), ("T3", "F3", "T4"), ("T2", "E", "T3"), ("T1", "V", "T2")]),
        (3, 4) => Some(vec![
            ("C123", "", "S"),
            ("C123'", "F4", "C123"),
            ("C12'3", "E", "C123'"),
            ("C1'23", "V", "C12'3"),
            ("C12'3'", "F4", "C12'3"),
            ("C1'23'", "V", "C12'3'"),
            ("C1'2'3", "E", "C1'23'"),
            ("C1'2'3'", "F4", "C1'2'3"),
        ]),
        (4, 3) => Some(vec![
            ("O1", "", "S*"),
            ("O2", "V", "O1"),
            ("O3", "E", "O2"),
            ("O3'", "F4", "O3"),
            ("O2'", "E", "O3'"),
            ("O1'", "V", "O2'"),
        ]),
        _ => None,
    }
}

/// Generators of the Apollonian group of the standard packing: the printed
/// `T`, `C` and `O` matrices for the tetrahedron, octahedron and cube
/// (a primed digit stands for an overlined one), and one inversion per dual
/// ball, named `s0, s1, …`, for the icosahedron and dodecahedron.
pub fn apollonian_generators<S: Scalar>(s: Solid) -> Result<GeneratorSet<S>, ApollonianError> {
    let ssa = platonic_generators::<S>(s)?;
    let Some(chain) = printed_chain(s) else {
        let pk = standard_packing::<S>(s)?;
        return inversions_in(pk.dual.balls());
    };
    let mut out: Vec<Generator<S>> = Vec::new();
    for (name, by, from) in chain {
        let src = out.iter().find(|g| g.name == from).or_else(|| ssa.get(from)).expect("chain source");
        let g = if by.is_empty() {
            let mut g = src.clone();
            g.name = name.to_string();
            g
        } else {
            src.conjugate_by(ssa.get(by).expect("chain conjugator"), name)?
        };
        out.push(Generator { role: Role::DualInversion, ..g });
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(GeneratorSet::new(Flavor::A, out))
}

fn inversions_in<S: Scalar>(balls: &[Ball<S>]) -> Result<GeneratorSet<S>, ApollonianError> {
    let gens = balls
        .iter()
        .enumerate()
        .map(|(i, b)| Generator::new(format!("s{i}"), Role::DualInversion, b.vector().clone()))
        .collect::<Result<_, _>>()?;
    Ok(GeneratorSet::new(Flavor::A, gens))
}

/// One inversion per ball of the dual arrangement.
pub fn apollonian_group_from_packing<S: Scalar>(a: &BallArrangement<S>) -> Result<GeneratorSet<S>, ApollonianError> {
    inversions_in(dual(a)?.balls())
}

/// Hash set of balls by canonical key, storing indices into the caller's
/// ball list.
struct Dedup {
    table: HashTable<u32>,
    hasher: DefaultHashBuilder,
}

impl Dedup {
    fn new() -> Self {
        Dedup { table: HashTable::new(), hasher: DefaultHashBuilder::default() }
    }

    fn hash_key<K: std::hash::Hash>(&self, key: &[K]) -> u64 {
        self.hasher.hash_one(key)
    }

    fn find<'a, S: Scalar + 'a>(&self, b: &Ball<S>, ball: impl Fn(usize) -> &'a Ball<S>) -> Option<usize> {
        let key = b.key();
        let hit = |key: &[S::Key]| {
            self.table
                .find(self.hash_key(key), |&i| ball(i as usize).coords().iter().zip(key).all(|(x, k)| x.key() == *k))
                .map(|&i| i as usize)
        };
        if let Some(i) = hit(&key) {
            return Some(i);
        }
        // float keys near a rounding boundary: try the other side too
        let flips: Vec<(usize, S::Key)> =
            b.coords().iter().enumerate().filter_map(|(i, x)| x.key_neighbor().map(|k| (i, k))).collect();
        for mask in 1u32..(1 << flips.len().min(8)) {
            let mut alt = key.clone();
            for (bit, (i, k)) in flips.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    alt[*i] = k.clone();
                }
            }
            if let Some(i) = hit(&alt) {
                return Some(i);
            }
        }
        None
    }

    fn insert<'a, S: Scalar + 'a>(&mut self, idx: usize, ball: impl Fn(usize) -> &'a Ball<S>) {
        let hasher = self.hasher;
        let h = hasher.hash_one(ball(idx).key());
        self.table.insert_unique(h, idx as u32, |&i| hasher.hash_one(ball(i as usize).key()));
    }
}

#[derive(Clone, Debug)]
pub struct ClusterEntry<S> {
    pub ball: Ball<S>,
    pub depth: usize,
    /// Entry this one was first produced from.
    pub parent: Option<usize>,
    /// Index of the generator applied to the parent.
    pub generator: Option<usize>,
    /// Index of the seed ball it descends from.
    pub orbit: usize,
}

/// The balls reachable from a seed by words of bounded length.
///
/// Entries are ordered by depth, then by producing word; each entry keeps
/// the lexicographically first of its shortest words.
#[derive(Clone, Debug)]
pub struct Cluster<S> {
    seed: BallArrangement<S>,
    generators: GeneratorSet<S>,
    entries: Vec<ClusterEntry<S>>,
    depth: usize,
}

impl<S: Scalar> Cluster<S> {
    pub fn seed(&self) -> &BallArrangement<S> {
        &self.seed
    }

    pub fn generators(&self) -> &GeneratorSet<S> {
        &self.generators
    }

    pub fn entries(&self) -> &[ClusterEntry<S>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The depth bound the cluster was built with.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn balls(&self) -> impl Iterator<Item = &Ball<S>> {
        self.entries.iter().map(|e| &e.ball)
    }

    pub fn curvatures(&self) -> Vec<S> {
        self.balls().map(Ball::curvature).collect()
    }

    /// Generator indices in the order they are applied to the seed ball.
    pub fn word(&self, i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut cur = i;
        while let (Some(p), Some(g)) = (self.entries[cur].parent, self.entries[cur].generator) {
            w.push(g);
            cur = p;
        }
        w.reverse();
        w
    }

    pub fn word_names(&self, i: usize) -> Vec<&str> {
        self.word(i).into_iter().map(|g| self.generators.generators[g].name()).collect()
    }

    /// Number of entries at each depth.
    pub fn depth_counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.depth + 1];
        for e in &self.entries {
            out[e.depth] += 1;
        }
        out
    }

    pub fn to_f64(&self) -> Result<Cluster<f64>, ApollonianError> {
        let generators = self
            .generators
            .generators
            .iter()
            .map(|g| Generator::new(g.name.clone(), g.role, g.mirror.to_f64()))
            .collect::<Result<_, _>>()?;
        Ok(Cluster {
            seed: self.seed.to_f64(),
            generators: GeneratorSet::new(self.generators.flavor, generators),
            entries: self
                .entries
                .iter()
                .map(|e| ClusterEntry { ball: e.ball.to_f64(), depth: e.depth, parent: e.parent, generator: e.generator, orbit: e.orbit })
                .collect(),
            depth: self.depth,
        })
    }
}

/// Breadth-first closure of the seed under words of length ≤ `depth`,
/// deduplicated by canonical key. A generator is never applied twice in a
/// row, and mirrors orthogonal to a ball are skipped since they fix it.
pub fn generate_cluster<S: Scalar>(
    seed: &BallArrangement<S>,
    g: &GeneratorSet<S>,
    depth: usize,
) -> Result<Cluster<S>, ApollonianError> {
    let mut dedup = Dedup::new();
    let mut entries: Vec<ClusterEntry<S>> = Vec::new();
    for (k, b) in seed.balls().iter().enumerate() {
        if dedup.find(b, |i| &entries[i].ball).is_none() {
            entries.push(ClusterEntry { ball: b.clone(), depth: 0, parent: None, generator: None, orbit: k });
            dedup.insert(entries.len() - 1, |i| &entries[i].ball);
        }
    }
    let mut start = 0;
    for level in 1..=depth {
        let end = entries.len();
        for i in start..end {
            for (gi, gen) in g.generators.iter().enumerate() {
                if entries[i].generator == Some(gi) {
                    continue;
                }
                let Some(b) = gen.image(&entries[i].ball)? else { continue };
                if dedup.find(&b, |j| &entries[j].ball).is_none() {
                    let orbit = entries[i].orbit;
                    entries.push(ClusterEntry { ball: b, depth: level, parent: Some(i), generator: Some(gi), orbit });
                    dedup.insert(entries.len() - 1, |j| &entries[j].ball);
                }
            }
        }
        start = end;
        if start == entries.len() {
            break;
        }
    }
    Ok(Cluster { seed: seed.clone(), generators: g.clone(), entries, depth })
}

/// Whether every pair of balls in the cluster is tangent or disjoint.
pub fn is_apollonian_packing<S: Scalar>(c: &Cluster<S>) -> bool {
    first_bad_pair(c).is_none()
}

/// The first pair of entries that overlap, nest or coincide.
pub fn first_bad_pair<S: Scalar>(c: &Cluster<S>) -> Option<(usize, usize, Position)> {
    let balls: Vec<Ball<S>> = c.balls().cloned().collect();
    first_overlap(&balls)
}

/// Color of each entry: the seed ball whose orbit contains it.
pub fn orbit_coloring<S: Scalar>(c: &Cluster<S>) -> Result<Vec<usize>, ApollonianError> {
    if c.generators.flavor != Flavor::A {
        return Err(ApollonianError::WrongFlavor(c.generators.flavor));
    }
    Ok(c.entries.iter().map(|e| e.orbit).collect())
}

/// The matrices of the perfect-square construction for `λ = 4cos²(π/p)`.
#[derive(Clone, Debug)]
pub struct SquareMatrices<S> {
    pub lambda: S,
    pub sqrt_lambda: S,
    /// The half-space `(0, 1, λ, λ)`.
    pub b: LVector<S>,
    pub e: Mat<S>,
    pub f: Mat<S>,
    pub s: Mat<S>,
}

impl<S: Scalar> SquareMatrices<S> {
    pub fn new(p: usize) -> Result<Self, ApollonianError> {
        if !(3..=5).contains(&p) {
            return Err(ApollonianError::UnsupportedP(p));
        }
        let r = two_cos_pi_over::<S>(p)?;
        let l = r.clone() * r.clone();
        let i = S::from_i64;
        let (z, o) = (S::zero(), S::one());
        let a = (l.clone() * l.clone() - i(4) * l.clone() - o.clone()) / i(4);
        let c = (l.clone() * l.clone() - i(4) * l.clone() + o.clone()) / i(4);
        let l8 = i(8) * l.clone();
        let w = (o.clone() - (l.clone() - i(4)) * (l.clone() - i(4)) * l.clone() * l.clone()) / l8.clone();
        let a2 = i(16) * a.clone() * a.clone() / l8.clone();
        let c2 = i(16) * c.clone() * c.clone() / l8;
        let e = Mat::from_rows(vec![
            vec![o.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), o.clone() - l.clone() / i(2), a.clone(), -c.clone()],
            vec![z.clone(), a, o.clone() - a2, -w.clone()],
            vec![z.clone(), c, w, o.clone() + c2],
        ])?;
        let r2 = i(2) * r.clone();
        let l2 = i(2) * l.clone();
        let f = Mat::from_rows(vec![
            vec![-o.clone(), z.clone(), r2.clone(), -r2.clone()],
            vec![z.clone(), o.clone(), z.clone(), z.clone()],
            vec![r2.clone(), z.clone(), o.clone() - l2.clone(), l2.clone()],
            vec![r2, z.clone(), -l2.clone(), l2 + o.clone()],
        ])?;
        let s = Mat::diag(&[-o.clone(), o.clone(), o.clone(), o.clone()]);
        let b = LVector(vec![z, o, l.clone(), l.clone()]);
        Ok(SquareMatrices { lambda: l, sqrt_lambda: r, b, e, f, s })
    }

    /// `(F_λ S)ⁿ` in closed form.
    pub fn fs_power(&self, n: u32) -> Mat<S> {
        let n = S::from_i64(n as i64);
        let (z, o) = (S::zero(), S::one());
        let r = S::from_i64(2) * self.sqrt_lambda.clone() * n.clone();
        let q = S::from_i64(2) * self.lambda.clone() * n.clone() * n;
        Mat::from_rows(vec![
            vec![o.clone(), z.clone(), r.clone(), -r.clone()],
            vec![z.clone(), o.clone(), z.clone(), z.clone()],
            vec![-r.clone(), z.clone(), o.clone() - q.clone(), q.clone()],
            vec![-r, z, -q.clone(), o + q],
        ])
        .expect("square rows")
    }

    /// `μ_{p,n} = E_λ (F_λ S)ⁿ E_λ`.
    pub fn mu(&self, n: u32) -> Mat<S> {
        self.e.mul(&self.fs_power(n)).mul(&self.e)
    }
}

/// The balls `μ_{p,n}(b)` for `0 ≤ n ≤ n_max`, whose curvatures are `n²`.
pub fn perfect_square_sequence<S: Scalar>(p: usize, n_max: usize) -> Result<Vec<(usize, Ball<S>)>, ApollonianError> {
    let m = SquareMatrices::<S>::new(p)?;
    let fs = m.f.mul(&m.s);
    let mut v = m.e.mul_vec(&m.b.0);
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        out.push((n, renormalize(LVector(m.e.mul_vec(&v)))?));
        v = fs.mul_vec(&v);
    }
    Ok(out)
}

/// A packing placed so that three consecutive vertex balls of one face
/// have prescribed curvatures, with its Apollonian generators.
#[derive(Clone, Debug)]
pub struct Seed<S> {
    pub packing: PlatonicPacking<S>,
    pub generators: GeneratorSet<S>,
    /// Map from the standard packing.
    pub map: MobiusMap<S>,
    /// Vertex indices carrying the prescribed curvatures, middle one second.
    pub triple: [usize; 3],
}

/// Places the solid's packing so that consecutive vertices `u, v, w` of a
/// face get the given curvatures.
///
/// Curvature is `κ(x) = <x, N>` with `N = −(0,…,0,1,1)`, so a map `M`
/// gives `κ(Mx) = <x, M⁻¹N>`. The light-like `n = M⁻¹N` is fixed by the
/// three products plus `<n,n> = 0`: it is `n₀ ± t·b_f` with `n₀` in the
/// span of the three balls and `b_f` the face's dual ball. A reflection
/// then sends `n` to `N`. When the given order admits no solution in the
/// field, the other two choices of middle curvature are tried.
pub fn seed_from_curvatures<S: Scalar>(s: Solid, k: &[S; 3]) -> Result<Seed<S>, ApollonianError> {
    let std = standard_packing::<S>(s)?;
    let lattice = std.primal.lattice().expect("standard packing has a lattice");
    let face = &lattice.facets()[0];
    let mid = face[0];
    let nb: Vec<usize> = face.iter().copied().filter(|&u| lattice.is_edge(mid, u)).collect();
    let triple = [nb[0], mid, nb[1]];
    let balls = std.primal.balls();
    let bf = std.dual.balls()[0].vector();
    let x: Vec<&LVector<S>> = triple.iter().map(|&i| balls[i].vector()).collect();
    let gram = Mat::from_fn(3, 3, |i, j| x[i].dot(x[j]));
    let dim = bf.0.len();
    let north = LVector(
        (0..dim).map(|i| if i + 2 >= dim { -S::one() } else { S::zero() }).collect::<Vec<S>>(),
    );

    for rot in 0..3 {
        let kk = [k[rot].clone(), k[(rot + 1) % 3].clone(), k[(rot + 2) % 3].clone()];
        let c = gram.solve(&kk, FLOAT_TOL)?;
        let n0 = (0..3).fold(LVector::new(vec![S::zero(); dim]), |acc, j| acc.add(&x[j].scale(&c[j])));
        let rad = -n0.dot(&n0);
        if rad.sign(FLOAT_TOL) < 0 {
            continue;
        }
        let Ok(Some(t)) = rad.sqrt() else { continue };
        for sign in [1, -1] {
            let n = n0.add(&bf.scale(&(S::from_i64(sign) * t.clone())));
            if n.time().sign(FLOAT_TOL) >= 0 {
                continue;
            }
            let map = light_map(&n, &north)?;
            let primal = std.primal.apply(&map)?;
            let dual_arr = std.dual.apply(&map)?;
            let gens = apollonian_generators::<S>(s)?.mapped(&map)?;
            let ok = triple.iter().zip(&kk).all(|(&i, want)| {
                primal.balls()[i].curvature().approx_eq(want, FLOAT_TOL * want.to_f64().abs().max(1.0))
            });
            debug_assert!(ok, "seed curvatures off");
            if !ok {
                continue;
            }
            return Ok(Seed { packing: PlatonicPacking { primal, dual: dual_arr }, generators: gens, map, triple });
        }
    }
    let shown = k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    Err(ApollonianError::NoSeed(s, shown))
}

/// A Lorentz map sending the past light-like `n` to `north`.
fn light_map<S: Scalar>(n: &LVector<S>, north: &LVector<S>) -> Result<MobiusMap<S>, ApollonianError> {
    let w = n.sub(north);
    if w.dot(&w).sign(FLOAT_TOL) > 0 {
        return Ok(reflection(&w)?);
    }
    // n = c·north; curvatures scale by c
    let c = n.time().clone() / north.time().clone();
    Ok(dilation(n.dim(), &(S::one() / c))?)
}

/// The Apollonian cluster of the packing whose consecutive curvatures are `k`.
pub fn cluster_from_curvatures<S: Scalar>(s: Solid, k: &[S; 3], depth: usize) -> Result<Cluster<S>, ApollonianError> {
    let seed = seed_from_curvatures(s, k)?;
    generate_cluster(&seed.packing.primal, &seed.generators, depth)
}

/// The cluster of the standard packing under its Apollonian group.
pub fn standard_cluster<S: Scalar>(s: Solid, depth: usize) -> Result<Cluster<S>, ApollonianError> {
    let pk = standard_packing::<S>(s)?;
    generate_cluster(&pk.primal, &apollonian_generators(s)?, depth)
}
