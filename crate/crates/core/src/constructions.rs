//! Graph families with a companion group acting on their vertices.
//!
//! Vertices are always numbered in lexicographic order of their structured
//! labels (coordinate tuples, subsets, edges).

use std::fmt;
use std::path::PathBuf;

use itertools::Itertools;
use serde::Serialize;

use crate::action::Action;
use crate::cayley::{aut_h_s, linear_map, CayleySpec, FiniteGroup};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Structured vertex label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexLabel {
    Tuple(Vec<usize>),
    Subset(Vec<usize>),
    Element(usize),
    /// Edge `{u, v}` (`u < v`) of an underlying graph.
    Edge([usize; 2]),
}

#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub name: String,
    pub graph: Graph,
    pub group: PermGroup,
    pub labels: Vec<VertexLabel>,
    /// Present for families built as Cayley graphs.
    pub cayley: Option<CayleySpec>,
}

impl FamilyInstance {
    /// Checks that every generator of `group` is an automorphism.
    pub fn new(
        name: impl Into<String>,
        graph: Graph,
        group: PermGroup,
        labels: Vec<VertexLabel>,
        cayley: Option<CayleySpec>,
    ) -> Result<Self> {
        let name = name.into();
        if group.degree() != graph.n() || labels.len() != graph.n() {
            return Err(Error::input(format!("{name}: group, labels and graph disagree in size")));
        }
        if let Some(g) = group.generators().iter().find(|g| !graph.is_automorphism(g)) {
            return Err(Error::input(format!("{name}: generator {g} is not an automorphism")));
        }
        Ok(FamilyInstance {
            name,
            graph,
            group,
            labels,
            cayley,
        })
    }

    pub fn label_of(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn vertex_of(&self, label: &VertexLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Same graph, group replaced by the full automorphism group.
    pub fn with_full_automorphisms(&self) -> Result<Self> {
        let mut out = self.clone();
        out.group = self.graph.automorphism_group()?;
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WreathMode {
    /// `r` blocks of `b` points; point `(j, i)` is `j*b + i`.
    Imprimitive,
    /// `b^r` coordinate tuples, numbered lexicographically.
    ProductAction,
}

/// Generators of `inner ≀ outer`, where `inner` acts on `b` points and
/// `outer` on `r` points.
pub fn wreath_product_generators(inner: &PermGroup, outer: &PermGroup, mode: WreathMode) -> Result<PermGroup> {
    let b = inner.degree();
    let r = outer.degree();
    if b == 0 || r == 0 {
        return Err(Error::input("wreath product of an empty action"));
    }
    let mut gens = Vec::new();
    match mode {
        WreathMode::Imprimitive => {
            for j in 0..r {
                for g in inner.generators() {
                    let images = (0..r * b)
                        .map(|x| if x / b == j { j * b + g.image(x % b) } else { x })
                        .collect();
                    gens.push(Permutation::from_images(images)?);
                }
            }
            for h in outer.generators() {
                let images = (0..r * b).map(|x| h.image(x / b) * b + x % b).collect();
                gens.push(Permutation::from_images(images)?);
            }
            PermGroup::new(r * b, gens)
        }
        WreathMode::ProductAction => {
            if !inner.is_transitive() {
                return Err(Error::input("product action needs a transitive inner group"));
            }
            let total = b.checked_pow(r as u32).filter(|&t| t <= 1 << 20).ok_or_else(|| {
                Error::capability("product action domain is too large")
            })?;
            let encode = |v: &[usize]| v.iter().fold(0, |acc, &x| acc * b + x);
            let decode = |mut x: usize| {
                let mut v = vec![0; r];
                for slot in v.iter_mut().rev() {
                    *slot = x % b;
                    x /= b;
                }
                v
            };
            for j in 0..r {
                for g in inner.generators() {
                    let images = (0..total)
                        .map(|x| {
                            let mut v = decode(x);
                            v[j] = g.image(v[j]);
                            encode(&v)
                        })
                        .collect();
                    gens.push(Permutation::from_images(images)?);
                }
            }
            for h in outer.generators() {
                let images = (0..total)
                    .map(|x| {
                        let v = decode(x);
                        let mut w = vec![0; r];
                        for (i, &c) in v.iter().enumerate() {
                            w[h.image(i)] = c;
                        }
                        encode(&w)
                    })
                    .collect();
                gens.push(Permutation::from_images(images)?);
            }
            PermGroup::new(total, gens)
        }
    }
}

/// `GL(l, 2)` acting on the `2^l - 1` nonzero vectors; vector `v` (as a
/// number) is point `v - 1`.
pub fn general_linear_f2(l: usize) -> Result<PermGroup> {
    if l == 0 || l > 10 {
        return Err(Error::input(format!("GL(l,2) needs 1 <= l <= 10, got {l}")));
    }
    let h = FiniteGroup::elementary_abelian(2, l as u32)?;
    let m = (1 << l) - 1;
    let mut gens = Vec::new();
    for i in 0..l {
        for j in 0..l {
            if i != j {
                let p = linear_map(&h, |x| {
                    let mut y = x.to_vec();
                    y[i] ^= y[j];
                    y
                });
                gens.push(Permutation::from_images((1..=m).map(|v| p.image(v) - 1).collect())?);
            }
        }
    }
    PermGroup::new(m, gens)
}

/// Family names and parameters, as accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Hamming { d: usize, k: usize },
    Johnson { n: usize, k: usize },
    JohnsonComplement { n: usize, k: usize },
    Ex82 { r: usize, l: usize },
    Ex83 { r: usize },
    Folded { n: usize },
    FoldedRank3 { n: usize },
    Cube { n: usize },
    HalfCube { n: usize },
    /// Halved cube with the group induced by `Aut(Q_n)`.
    HalfCubeInduced { n: usize },
    Petersen,
    Complete { n: usize },
    Multipartite { m: usize, b: usize },
    Cycle { n: usize },
    LineGraph(Box<FamilySpec>),
    /// A Cayley spec file; the group is `H_R ⋊ Aut(H,S)`.
    Cayley(PathBuf),
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            Hamming { d, k } => write!(f, "hamming:{d},{k}"),
            Johnson { n, k } => write!(f, "johnson:{n},{k}"),
            JohnsonComplement { n, k } => write!(f, "johnson-c:{n},{k}"),
            Ex82 { r, l } => write!(f, "ex82:{r},{l}"),
            Ex83 { r } => write!(f, "ex83:{r}"),
            Folded { n } => write!(f, "folded:{n}"),
            FoldedRank3 { n } => write!(f, "folded-rank3:{n}"),
            Cube { n } => write!(f, "cube:{n}"),
            HalfCube { n } => write!(f, "halfcube:{n}"),
            HalfCubeInduced { n } => write!(f, "halfcube-induced:{n}"),
            Petersen => write!(f, "petersen"),
            Complete { n } => write!(f, "complete:{n}"),
            Multipartite { m, b } => write!(f, "multipartite:{m},{b}"),
            Cycle { n } => write!(f, "cycle:{n}"),
            LineGraph(inner) => write!(f, "linegraph:{inner}"),
            Cayley(path) => write!(f, "cayley:{}", path.display()),
        }
    }
}

impl std::str::FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_family(s)
    }
}

/// Parses `name[:p1,p2,..]`; `linegraph:` takes a nested family.
pub fn parse_family(text: &str) -> Result<FamilySpec> {
    let text = text.trim();
    let (name, params) = match text.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (text, None),
    };
    let bad = |msg: String| Error::parse(1, 0, format!("family `{text}`: {msg}"));
    if name == "linegraph" {
        let inner = params.ok_or_else(|| bad("missing inner family".into()))?;
        return Ok(FamilySpec::LineGraph(Box::new(parse_family(inner)?)));
    }
    if name == "cayley" {
        let path = params.ok_or_else(|| bad("missing spec file".into()))?;
        return Ok(FamilySpec::Cayley(PathBuf::from(path)));
    }
    let nums: Vec<usize> = match params {
        None | Some("") => Vec::new(),
        Some(p) => p
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("parameters must be non-negative integers".into()))?,
    };
    let arity = |k: usize| -> Result<()> {
        if nums.len() == k {
            Ok(())
        } else {
            Err(bad(format!("expected {k} parameter(s), got {}", nums.len())))
        }
    };
    use FamilySpec::*;
    let spec = match name {
        "hamming" => {
            arity(2)?;
            Hamming { d: nums[0], k: nums[1] }
        }
        "johnson" => {
            arity(2)?;
            Johnson { n: nums[0], k: nums[1] }
        }
        "johnson-c" => {
            arity(2)?;
            JohnsonComplement { n: nums[0], k: nums[1] }
        }
        "ex82" => {
            arity(2)?;
            Ex82 { r: nums[0], l: nums[1] }
        }
        "ex83" => {
            arity(1)?;
            Ex83 { r: nums[0] }
        }
        "folded" => {
            arity(1)?;
            Folded { n: nums[0] }
        }
        "folded-rank3" => {
            arity(1)?;
            FoldedRank3 { n: nums[0] }
        }
        "cube" => {
            arity(1)?;
            Cube { n: nums[0] }
        }
        "halfcube" => {
            arity(1)?;
            HalfCube { n: nums[0] }
        }
        "halfcube-induced" => {
            arity(1)?;
            HalfCubeInduced { n: nums[0] }
        }
        "petersen" => {
            arity(0)?;
            Petersen
        }
        "complete" => {
            arity(1)?;
            Complete { n: nums[0] }
        }
        "multipartite" => {
            arity(2)?;
            Multipartite { m: nums[0], b: nums[1] }
        }
        "cycle" => {
            arity(1)?;
            Cycle { n: nums[0] }
        }
        other => return Err(bad(format!("unknown family `{other}`"))),
    };
    Ok(spec)
}

/// Builds the instance named by `spec`.
pub fn build(spec: &FamilySpec) -> Result<FamilyInstance> {
    use FamilySpec::*;
    match spec {
        Hamming { d, k } => hamming(*d, *k),
        Johnson { n, k } => johnson(*n, *k),
        JohnsonComplement { n, k } => johnson_complement(*n, *k),
        Ex82 { r, l } => example_82(*r, *l),
        Ex83 { r } => example_83(*r),
        Folded { n } => folded_cube(*n),
        FoldedRank3 { n } => folded_cube_rank3(*n),
        Cube { n } => hypercube(*n),
        HalfCube { n } => halved_cube(*n),
        HalfCubeInduced { n } => halved_cube_induced(*n),
        Petersen => petersen(),
        Complete { n } => complete(*n),
        Multipartite { m, b } => complete_multipartite(*m, *b),
        Cycle { n } => cycle(*n),
        LineGraph(inner) => line_graph(&build(inner)?),
        Cayley(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
            let spec = CayleySpec::parse(&text)?;
            cayley_with_aut(&format!("cayley:{}", path.display()), spec)
        }
    }
}

/// Parses and builds in one step.
pub fn build_str(spec: &str) -> Result<FamilyInstance> {
    build(&parse_family(spec)?)
}

fn element_labels(h: &FiniteGroup) -> Vec<VertexLabel> {
    (0..h.order() as u32)
        .map(|x| match h.vector(x) {
            Some(v) => VertexLabel::Tuple(v.into_iter().map(|c| c as usize).collect()),
            None => VertexLabel::Element(x as usize),
        })
        .collect()
}

/// `Cay(H, S)` with the group `H_R`.
pub fn cayley_graph(spec: CayleySpec) -> Result<FamilyInstance> {
    let graph = spec.graph();
    let group = spec.group.right_regular();
    debug_assert_eq!(graph.is_connected(), spec.is_connected());
    let labels = element_labels(&spec.group);
    FamilyInstance::new("cayley", graph, group, labels, Some(spec))
}

/// `Cay(H, S)` with `H_R ⋊ A`, where `A` is given by generators that must
/// be automorphisms of `H` stabilising `S`.
fn cayley_semidirect(name: &str, spec: CayleySpec, aut_gens: Vec<Permutation>) -> Result<FamilyInstance> {
    for a in &aut_gens {
        if !spec.group.is_automorphism(a) {
            return Err(Error::input(format!("{name}: {a} is not a group automorphism")));
        }
        if !spec.connection.iter().all(|&s| spec.contains(a.image(s as usize) as u32)) {
            return Err(Error::input(format!("{name}: {a} does not stabilise S")));
        }
    }
    let hr = spec.group.right_regular();
    let mut gens = hr.generators().to_vec();
    gens.extend(aut_gens);
    let group = PermGroup::new(spec.order(), gens)?;
    debug_assert!(group.normalizes(&hr));
    let graph = spec.graph();
    let labels = element_labels(&spec.group);
    FamilyInstance::new(name, graph, group, labels, Some(spec))
}

/// `Cay(H, S)` with `H_R ⋊ Aut(H, S)`, the latter found by search.
pub fn cayley_with_aut(name: &str, spec: CayleySpec) -> Result<FamilyInstance> {
    let aut = aut_h_s(&spec)?;
    cayley_semidirect(name, spec.clone(), aut.generators().to_vec())
}

fn coord_swap(h: &FiniteGroup, i: usize, j: usize) -> Permutation {
    linear_map(h, |x| {
        let mut y = x.to_vec();
        y.swap(i, j);
        y
    })
}

fn coord_cycle(h: &FiniteGroup) -> Permutation {
    linear_map(h, |x| {
        let mut y = x.to_vec();
        y.rotate_right(1);
        y
    })
}

/// `H = Z_2^{rl}` as `r` blocks of `l` coordinates, `S` the
/// nonzero vectors supported in a single block; group
/// `H_R ⋊ (GL(l,2) ≀ S_r)`.
pub fn example_82(r: usize, l: usize) -> Result<FamilyInstance> {
    if r < 2 || l < 2 {
        return Err(Error::input(format!("ex82 needs r >= 2 and l >= 2, got r={r}, l={l}")));
    }
    let h = FiniteGroup::elementary_abelian(2, (r * l) as u32)?;
    let s: Vec<u32> = (1..h.order() as u32)
        .filter(|&x| {
            let v = h.vector(x).expect("vector");
            (0..r).filter(|&b| v[b * l..(b + 1) * l].iter().any(|&c| c != 0)).count() == 1
        })
        .collect();
    let spec = CayleySpec::new(h.clone(), s)?;
    let mut gens = Vec::new();
    for a in 0..l {
        for b in 0..l {
            if a != b {
                gens.push(linear_map(&h, |x| {
                    let mut y = x.to_vec();
                    y[a] ^= y[b];
                    y
                }));
            }
        }
    }
    let block_perm = |sigma: &dyn Fn(usize) -> usize| {
        linear_map(&h, |x| {
            let mut y = vec![0; x.len()];
            for blk in 0..r {
                let to = sigma(blk);
                y[to * l..(to + 1) * l].copy_from_slice(&x[blk * l..(blk + 1) * l]);
            }
            y
        })
    };
    gens.push(block_perm(&|b| match b {
        0 => 1,
        1 => 0,
        b => b,
    }));
    gens.push(block_perm(&|b| (b + 1) % r));
    cayley_semidirect(&format!("ex82:{r},{l}"), spec, gens)
}

/// `H = Z_3^r`, `S = {±a_i}`; group `H_R ⋊ (S_2 ≀ S_r)`.
pub fn example_83(r: usize) -> Result<FamilyInstance> {
    if r < 2 {
        return Err(Error::input(format!("ex83 needs r >= 2, got {r}")));
    }
    let h = FiniteGroup::elementary_abelian(3, r as u32)?;
    let mut s = Vec::new();
    for i in 0..r {
        for c in [1, 2] {
            let mut v = vec![0; r];
            v[i] = c;
            s.push(h.from_vector(&v)?);
        }
    }
    let spec = CayleySpec::new(h.clone(), s)?;
    let negate = linear_map(&h, |x| {
        let mut y = x.to_vec();
        y[0] = (3 - y[0]) % 3;
        y
    });
    let gens = vec![negate, coord_swap(&h, 0, 1), coord_cycle(&h)];
    cayley_semidirect(&format!("ex83:{r}"), spec, gens)
}

fn folded_check(n: usize) -> Result<()> {
    if ![3, 5, 7].contains(&n) {
        return Err(Error::input(format!("folded cubes are supported for n in {{3, 5, 7}}, got {n}")));
    }
    Ok(())
}

/// `Ω = {e_1, .., e_{n-1}, e_1 + .. + e_{n-1}}` in `Z_2^{n-1}` and the
/// generators of `Aut(H, Ω) ≅ S_n`.
fn folded_data(n: usize) -> Result<(FiniteGroup, Vec<u32>, Vec<Permutation>)> {
    folded_check(n)?;
    let dim = n - 1;
    let h = FiniteGroup::elementary_abelian(2, dim as u32)?;
    let mut omega: Vec<u32> = (0..dim)
        .map(|i| {
            let mut v = vec![0; dim];
            v[i] = 1;
            h.from_vector(&v).expect("vector")
        })
        .collect();
    omega.push(h.order() as u32 - 1);
    // tau: e_1 -> all-ones, e_j fixed for j >= 2.
    let tau = linear_map(&h, |x| {
        let mut y = x.to_vec();
        if x[0] == 1 {
            for c in y.iter_mut().skip(1) {
                *c ^= 1;
            }
        }
        y
    });
    let gens = vec![coord_swap(&h, 0, 1), coord_cycle(&h), tau];
    Ok((h, omega, gens))
}

/// The folded `n`-cube `Cay(Z_2^{n-1}, Ω)`.
pub fn folded_cube(n: usize) -> Result<FamilyInstance> {
    let (h, omega, gens) = folded_data(n)?;
    let spec = CayleySpec::new(h, omega)?;
    cayley_semidirect(&format!("folded:{n}"), spec, gens)
}

/// `Cay(Z_2^{n-1}, S)` with `S` the products of `n - 2`
/// distinct elements of `Ω`.
pub fn folded_cube_rank3(n: usize) -> Result<FamilyInstance> {
    let (h, omega, gens) = folded_data(n)?;
    let s: Vec<u32> = omega
        .iter()
        .copied()
        .combinations(n - 2)
        .map(|c| c.into_iter().fold(0, |acc, x| h.mul(acc, x)))
        .unique()
        .collect();
    let spec = CayleySpec::new(h, s)?;
    cayley_semidirect(&format!("folded-rank3:{n}"), spec, gens)
}

/// Hamming graph `H(d, k)` with `S_k ≀ S_d` in product action.
pub fn hamming(d: usize, k: usize) -> Result<FamilyInstance> {
    if d < 2 || k < 2 {
        return Err(Error::input(format!("hamming needs d >= 2 and k >= 2, got d={d}, k={k}")));
    }
    let group = wreath_product_generators(
        &PermGroup::symmetric(k),
        &PermGroup::symmetric(d),
        WreathMode::ProductAction,
    )?;
    let tuples: Vec<Vec<usize>> = (0..d).map(|_| 0..k).multi_cartesian_product().collect();
    let graph = Graph::from_fn(tuples.len(), |u, v| {
        tuples[u].iter().zip(&tuples[v]).filter(|(a, b)| a != b).count() == 1
    });
    debug_assert_eq!(graph.regular_degree(), Some(d * (k - 1)));
    let labels = tuples.into_iter().map(VertexLabel::Tuple).collect();
    FamilyInstance::new(format!("hamming:{d},{k}"), graph, group, labels, None)
}

fn subsets_with_symmetric(n: usize, k: usize) -> Result<(Vec<Vec<usize>>, PermGroup)> {
    let subsets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let sym = PermGroup::symmetric(n);
    let act = Action::on_labels(&sym, &subsets, |s, g| {
        let mut img: Vec<usize> = s.iter().map(|&x| g.image(x)).collect();
        img.sort_unstable();
        img
    })?;
    Ok((subsets, act.image().clone()))
}

/// Johnson graph `J(n, k)` with `S_n`.
pub fn johnson(n: usize, k: usize) -> Result<FamilyInstance> {
    if k == 0 || k >= n {
        return Err(Error::input(format!("johnson needs 1 <= k <= n-1, got n={n}, k={k}")));
    }
    let (subsets, group) = subsets_with_symmetric(n, k)?;
    let graph = Graph::from_fn(subsets.len(), |u, v| {
        subsets[u].iter().filter(|x| subsets[v].contains(x)).count() == k - 1
    });
    let labels = subsets.into_iter().map(VertexLabel::Subset).collect();
    FamilyInstance::new(format!("johnson:{n},{k}"), graph, group, labels, None)
}

/// Complement of `J(n, k)` with `S_n`.
pub fn johnson_complement(n: usize, k: usize) -> Result<FamilyInstance> {
    let j = johnson(n, k)?;
    FamilyInstance::new(format!("johnson-c:{n},{k}"), j.graph.complement(), j.group, j.labels, None)
}

/// The Petersen graph as the Kneser graph on 2-subsets of a 5-set, with
/// `S_5`.
pub fn petersen() -> Result<FamilyInstance> {
    let mut p = johnson_complement(5, 2)?;
    p.name = "petersen".into();
    Ok(p)
}

/// `Q_n = Cay(Z_2^n, standard basis)` with its full automorphism group.
pub fn hypercube(n: usize) -> Result<FamilyInstance> {
    if n == 0 || n > 6 {
        return Err(Error::input(format!("cube needs 1 <= n <= 6, got {n}")));
    }
    let h = FiniteGroup::elementary_abelian(2, n as u32)?;
    let basis: Vec<u32> = (0..n).map(|i| 1 << i).collect();
    let spec = CayleySpec::new(h.clone(), basis)?;
    let graph = spec.graph();
    let group = graph.automorphism_group()?;
    let labels = element_labels(&h);
    FamilyInstance::new(format!("cube:{n}"), graph, group, labels, Some(spec))
}

/// Halved cube: even-weight vectors of `Z_2^n`, adjacent at Hamming
/// distance 2, with the full automorphism group.
pub fn halved_cube(n: usize) -> Result<FamilyInstance> {
    if !(2..=7).contains(&n) {
        return Err(Error::input(format!("halfcube needs 2 <= n <= 7, got {n}")));
    }
    let verts: Vec<u32> = (0..1u32 << n).filter(|x| x.count_ones() % 2 == 0).collect();
    let graph = Graph::from_fn(verts.len(), |u, v| (verts[u] ^ verts[v]).count_ones() == 2);
    let group = graph.automorphism_group()?;
    let labels = verts
        .iter()
        .map(|&x| VertexLabel::Tuple((0..n).rev().map(|i| (x >> i & 1) as usize).collect()))
        .collect();
    FamilyInstance::new(format!("halfcube:{n}"), graph, group, labels, None)
}

/// Halved cube with the group induced on the even-weight vectors by their
/// setwise stabiliser in `Aut(Q_n)`: even translations and coordinate
/// permutations, of order `2^(n-1) n!`.
pub fn halved_cube_induced(n: usize) -> Result<FamilyInstance> {
    let full = halved_cube(n)?;
    let verts: Vec<u32> = (0..1u32 << n).filter(|x| x.count_ones() % 2 == 0).collect();
    let on_even = |f: &dyn Fn(u32) -> u32| {
        let images = verts
            .iter()
            .map(|&x| verts.binary_search(&f(x)).expect("even weight preserved") as u32)
            .collect();
        Permutation::from_images_unchecked(images)
    };
    let swap = |x: u32| (x & !3) | (x & 1) << 1 | (x >> 1 & 1);
    let cycle = |x: u32| (x << 1 | x >> (n - 1)) & ((1 << n) - 1);
    let gens = vec![on_even(&|x| x ^ 3), on_even(&swap), on_even(&cycle)];
    let group = PermGroup::new(verts.len(), gens)?;
    FamilyInstance::new(format!("halfcube-induced:{n}"), full.graph, group, full.labels, None)
}

pub fn complete(n: usize) -> Result<FamilyInstance> {
    if n == 0 {
        return Err(Error::input("complete graph needs n >= 1"));
    }
    let graph = Graph::from_fn(n, |_, _| true);
    let labels = (0..n).map(VertexLabel::Element).collect();
    FamilyInstance::new(format!("complete:{n}"), graph, PermGroup::symmetric(n), labels, None)
}

/// `K_{m[b]}` with `S_b ≀ S_m`; vertex `(part, i)` is `part*b + i`.
pub fn complete_multipartite(m: usize, b: usize) -> Result<FamilyInstance> {
    if m < 2 || b == 0 {
        return Err(Error::input(format!("multipartite needs m >= 2 and b >= 1, got m={m}, b={b}")));
    }
    let group = wreath_product_generators(
        &PermGroup::symmetric(b),
        &PermGroup::symmetric(m),
        WreathMode::Imprimitive,
    )?;
    let graph = Graph::from_fn(m * b, |u, v| u / b != v / b);
    let labels = (0..m * b).map(|x| VertexLabel::Tuple(vec![x / b, x % b])).collect();
    FamilyInstance::new(format!("multipartite:{m},{b}"), graph, group, labels, None)
}

/// `C_n` with the dihedral group of order `2n`.
pub fn cycle(n: usize) -> Result<FamilyInstance> {
    if n < 3 {
        return Err(Error::input(format!("cycle needs n >= 3, got {n}")));
    }
    let graph = crate::graph::named::cycle(n);
    let labels = (0..n).map(VertexLabel::Element).collect();
    FamilyInstance::new(format!("cycle:{n}"), graph, PermGroup::dihedral(n), labels, None)
}

/// Line graph of an instance, with the group induced on edges.
pub fn line_graph(inner: &FamilyInstance) -> Result<FamilyInstance> {
    let (graph, edges) = inner.graph.line_graph()?;
    let act = Action::on_labels(&inner.group, &edges, |&(u, v), g| {
        let (a, b) = (g.image(u), g.image(v));
        (a.min(b), a.max(b))
    })?;
    let labels = edges.iter().map(|&(u, v)| VertexLabel::Edge([u, v])).collect();
    FamilyInstance::new(format!("linegraph:{}", inner.name), graph, act.image().clone(), labels, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_examples() {
        let z5 = FiniteGroup::cyclic(5).unwrap();
        let c5 = cayley_graph(CayleySpec::new(z5, vec![1, 4]).unwrap()).unwrap();
        assert_eq!(c5.group.order(), 5);
        assert!(c5.group.is_regular());
        let v4 = FiniteGroup::elementary_abelian(2, 2).unwrap();
        let c4 = cayley_graph(CayleySpec::new(v4, vec![1, 2]).unwrap()).unwrap();
        assert_eq!(c4.graph.regular_degree(), Some(2));
        assert!(c4.graph.is_connected());
    }

    #[test]
    fn example_groups() {
        let e83 = example_83(2).unwrap();
        assert_eq!(e83.graph.n(), 9);
        assert_eq!(e83.group.order(), 72);
        let e82 = example_82(2, 2).unwrap();
        assert_eq!(e82.graph.n(), 16);
        assert_eq!(e82.cayley.as_ref().unwrap().connection.len(), 6);
        assert_eq!(e82.group.order(), 16 * 72);
        let (s3, _) = e82.graph.induced_subgraph(e82.graph.neighbors(0)).unwrap();
        assert_eq!(s3.detect_disjoint_cliques(), Some((2, 3)));
        let e83_3 = example_83(3).unwrap();
        let (s, _) = e83_3.graph.induced_subgraph(e83_3.graph.neighbors(0)).unwrap();
        assert_eq!(s.detect_disjoint_cliques(), Some((3, 2)));
        assert!(example_83(1).is_err());
        assert!(example_82(2, 1).is_err());
    }

    #[test]
    fn hamming_graphs() {
        let h24 = hamming(2, 4).unwrap();
        assert_eq!(h24.graph.n(), 16);
        assert_eq!(h24.graph.regular_degree(), Some(6));
        assert_eq!(h24.group.order(), 1152);
        let (layers, _) = h24.graph.distance_layers(5).unwrap();
        assert_eq!(layers.iter().map(|l| l.len()).collect::<Vec<_>>(), vec![1, 6, 9]);
        let h23 = hamming(2, 3).unwrap();
        let e83 = example_83(2).unwrap();
        // Both use coordinate vectors over {0,1,2} in the same order.
        assert_eq!(h23.graph, e83.graph);
        let h22 = hamming(2, 2).unwrap();
        assert_eq!(h22.graph.regular_degree(), Some(2));
        assert_eq!(h22.graph.girth(), Some(4));
        assert_eq!(h22.graph.n(), 4);
    }

    #[test]
    fn johnson_graphs() {
        let j = johnson(5, 2).unwrap();
        assert_eq!(j.graph.regular_degree(), Some(6));
        let jc = johnson_complement(7, 2).unwrap();
        assert_eq!((jc.graph.n(), jc.graph.regular_degree()), (21, Some(10)));
        assert_eq!(jc.group.order(), 5040);
        let p = petersen().unwrap();
        assert_eq!(p.graph.girth(), Some(5));
        assert_eq!(p.graph.regular_degree(), Some(3));
        assert_eq!(p.group.order(), 120);
        assert!(johnson(4, 0).is_err());
        assert!(johnson(4, 4).is_err());
    }

    #[test]
    fn folded_cubes() {
        let f5 = folded_cube(5).unwrap();
        assert_eq!((f5.graph.n(), f5.graph.regular_degree()), (16, Some(5)));
        assert_eq!(f5.group.order(), 16 * 120);
        let r5 = folded_cube_rank3(5).unwrap();
        assert_eq!(r5.cayley.as_ref().unwrap().connection.len(), 10);
        assert_eq!(r5.graph.regular_degree(), Some(10));
        assert_eq!(r5.graph.girth(), Some(3));
        let f3 = folded_cube(3).unwrap();
        assert!(f3.graph.is_complete() && f3.graph.n() == 4);
        assert!(folded_cube(4).is_err());
        assert!(folded_cube(9).is_err());
    }

    #[test]
    fn cubes_and_others() {
        let q4 = hypercube(4).unwrap();
        assert_eq!(q4.graph.regular_degree(), Some(4));
        assert_eq!(q4.group.order(), 384);
        let hq4 = halved_cube(4).unwrap();
        assert_eq!((hq4.graph.n(), hq4.graph.regular_degree()), (8, Some(6)));
        let k222 = complete_multipartite(3, 2).unwrap();
        assert_eq!((k222.graph.n(), k222.graph.regular_degree()), (6, Some(4)));
        assert_eq!(k222.group.order(), 48);
        assert_eq!(cycle(6).unwrap().group.order(), 12);
    }

    #[test]
    fn wreath_products() {
        let s2 = PermGroup::symmetric(2);
        let w = wreath_product_generators(&s2, &s2, WreathMode::Imprimitive).unwrap();
        assert_eq!((w.degree(), w.order()), (4, 8));
        let s4 = PermGroup::symmetric(4);
        let p = wreath_product_generators(&s4, &s2, WreathMode::ProductAction).unwrap();
        assert_eq!((p.degree(), p.order()), (16, 1152));
        let t = wreath_product_generators(&PermGroup::cyclic(3), &PermGroup::trivial(2), WreathMode::Imprimitive)
            .unwrap();
        assert_eq!(t.order(), 9);
        assert_eq!(t.orbits(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(wreath_product_generators(&PermGroup::trivial(2), &s2, WreathMode::ProductAction).is_err());
    }

    #[test]
    fn general_linear() {
        assert_eq!(general_linear_f2(2).unwrap().order(), 6);
        assert_eq!(general_linear_f2(3).unwrap().order(), 168);
        assert_eq!(general_linear_f2(4).unwrap().order(), 20160);
    }

    #[test]
    fn line_graph_of_petersen() {
        let l = build_str("linegraph:petersen").unwrap();
        assert_eq!(l.graph.n(), 15);
        assert_eq!(l.graph.regular_degree(), Some(4));
        assert_eq!(l.group.order(), 120);
    }

    #[test]
    fn family_grammar() {
        for s in [
            "hamming:2,4",
            "johnson:5,2",
            "johnson-c:7,2",
            "ex82:2,2",
            "ex83:2",
            "folded:5",
            "folded-rank3:5",
            "cube:4",
            "halfcube:4",
            "petersen",
            "complete:5",
            "multipartite:3,2",
            "cycle:6",
            "linegraph:linegraph:complete:4",
        ] {
            assert_eq!(parse_family(s).unwrap().to_string(), s);
        }
        assert!(parse_family("hamming:2").is_err());
        assert!(parse_family("nonsense:1").is_err());
        assert!(parse_family("cube:x").is_err());
    }
}
