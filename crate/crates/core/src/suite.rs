//! The acceptance criteria as runnable checks, shared by the CLI `suite`
//! command and the `acceptance` test target.

use std::collections::{HashSet, VecDeque};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::cayley::{aut_h_s, is_cayley, lemma_2_2_check, CayleySpec, FiniteGroup};
use crate::classification::{psl_2_8, table2_rows, table2_verify_row};
use crate::constructions::{self as c, FamilyInstance};
use crate::error::Result;
use crate::graph::Graph;
use crate::group::{brute_force_elements, enumeration_bound, PermGroup};
use crate::homogeneity::{
    definitional_oracle, is_kCH, is_s_arc_transitive, local_action, proposition_1_2_check,
    theorem_1_3_classify, verify_witness, Mode, Theorem13Case, ORACLE_MAX_VERTICES,
};
use crate::patterns::{catalog, connected_catalog};
use crate::perm::Permutation;
use crate::quotients::theorem_1_4_report;

/// Number of acceptance criteria.
pub const CRITERIA: usize = 12;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed_ms: u128,
    pub limit_ms: Option<u128>,
    /// One line per check; failed checks start with `FAIL`, informational
    /// lines with `note`.
    pub details: Vec<String>,
}

impl CriterionOutcome {
    pub fn summary_line(&self) -> String {
        let limit = self.limit_ms.map(|l| format!(" (limit {l} ms)")).unwrap_or_default();
        format!(
            "criterion {:>2} {}: {} in {} ms{}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed_ms,
            limit
        )
    }
}

#[derive(Default)]
struct Checks {
    ok: bool,
    lines: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks {
            ok: true,
            lines: Vec::new(),
        }
    }

    fn expect(&mut self, cond: bool, what: impl Into<String>) {
        let what = what.into();
        if cond {
            self.lines.push(format!("ok   {what}"));
        } else {
            self.ok = false;
            self.lines.push(format!("FAIL {what}"));
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.lines.push(format!("note {}", what.into()));
    }
}

type Runner = fn(&mut Checks) -> Result<()>;

const TABLE: [(&str, Option<u64>, Runner); CRITERIA] = [
    ("line graph of Petersen is (S_5,3)-CH, locally 2K_2", Some(5), criterion_1),
    ("H(2,4) and complement are (S_4 wr S_2,3)-CH", Some(10), criterion_2),
    ("Cayley graphs over Z_3^2 and Z_2^4 are 3-CH and primitive", Some(10), criterion_3),
    ("folded_cube_rank3(5) is 3-CH, case (v)", Some(10), criterion_4),
    ("J(7,2) complement with S_7", Some(30), criterion_5),
    ("Q_4 is 4-CH; halved 4-cube is not 4-CH under its full group", Some(30), criterion_6),
    ("3-CH criterion equivalence over the corpus", None, criterion_7),
    ("normal quotients of Q_3 and C_6", None, criterion_8),
    ("normaliser of H_R equals H_R : Aut(H,S)", None, criterion_9),
    ("Cayley recognition by regular subgroups", None, criterion_10),
    ("centraliser table rows 1-3", None, criterion_11),
    ("permutation group property suite", Some(300), criterion_12),
];

pub fn title(id: usize) -> &'static str {
    TABLE[id - 1].0
}

/// Runs criterion `id` (1-based).
pub fn run(id: usize) -> CriterionOutcome {
    assert!((1..=CRITERIA).contains(&id), "criterion {id} out of range");
    let (title, limit, runner) = TABLE[id - 1];
    let mut checks = Checks::new();
    let start = Instant::now();
    if let Err(e) = runner(&mut checks) {
        checks.expect(false, format!("error: {e}"));
    }
    let elapsed = start.elapsed();
    let limit = limit.map(Duration::from_secs);
    if let Some(l) = limit {
        checks.expect(elapsed <= l, format!("finished within {} s", l.as_secs()));
    }
    CriterionOutcome {
        id,
        title,
        passed: checks.ok,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.map(|l| l.as_millis()),
        details: checks.lines,
    }
}

pub fn run_all() -> Vec<CriterionOutcome> {
    (1..=CRITERIA).map(run).collect()
}

fn local_cliques(g: &Graph, v: usize) -> Result<Option<(usize, usize)>> {
    Ok(g.induced_subgraph(g.neighbors(v))?.0.detect_disjoint_cliques())
}

fn criterion_1(ch: &mut Checks) -> Result<()> {
    let lp = c::line_graph(&c::petersen()?)?;
    ch.expect(lp.graph.n() == 15, format!("{} vertices", lp.graph.n()));
    ch.expect(lp.group.order() == 120, format!("|G| = {}", lp.group.order()));
    ch.expect(is_kCH(&lp.graph, &lp.group, 3)?.verdict, "(G,3)-CH");
    let cl = local_cliques(&lp.graph, 0)?;
    ch.expect(cl == Some((2, 2)), format!("[Γ(v)] as rK_b: {cl:?}"));
    Ok(())
}

fn criterion_2(ch: &mut Checks) -> Result<()> {
    let h = c::hamming(2, 4)?;
    ch.expect(h.group.order() == 1152, format!("|G| = {}", h.group.order()));
    ch.expect(is_kCH(&h.graph, &h.group, 3)?.verdict, "H(2,4) is (G,3)-CH");
    let comp = h.graph.complement();
    ch.expect(is_kCH(&comp, &h.group, 3)?.verdict, "complement of H(2,4) is (G,3)-CH");
    let cl = local_cliques(&h.graph, 0)?;
    ch.expect(cl == Some((2, 3)), format!("[Γ(α)] as rK_b: {cl:?}"));
    let systems = h.group.minimal_block_systems()?;
    ch.expect(
        systems.iter().all(|s| s.is_trivial()) && h.group.is_primitive()?,
        format!("G primitive ({} nontrivial block systems)", systems.iter().filter(|s| !s.is_trivial()).count()),
    );
    Ok(())
}

fn cayley_example(ch: &mut Checks, inst: &FamilyInstance, aut_order: u128, cliques: (usize, usize)) -> Result<()> {
    let name = &inst.name;
    ch.expect(is_kCH(&inst.graph, &inst.group, 3)?.verdict, format!("{name}: (G,3)-CH"));
    let spec = inst.cayley.as_ref().expect("Cayley family");
    let a = aut_h_s(spec)?.order();
    ch.expect(a == aut_order, format!("{name}: |Aut(H,S)| = {a}"));
    let s: Vec<usize> = spec.connection.iter().map(|&x| x as usize).collect();
    let cl = inst.graph.induced_subgraph(&s)?.0.detect_disjoint_cliques();
    ch.expect(cl == Some(cliques), format!("{name}: [S] as rK_b: {cl:?}"));
    let blocks = inst.group.minimal_block_systems()?.iter().filter(|b| !b.is_trivial()).count();
    ch.expect(blocks == 0, format!("{name}: G primitive ({blocks} nontrivial block systems)"));
    Ok(())
}

fn criterion_3(ch: &mut Checks) -> Result<()> {
    cayley_example(ch, &c::example_83(2)?, 8, (2, 2))?;
    cayley_example(ch, &c::example_82(2, 2)?, 72, (2, 3))
}

fn criterion_4(ch: &mut Checks) -> Result<()> {
    let f = c::folded_cube_rank3(5)?;
    ch.expect(is_kCH(&f.graph, &f.group, 3)?.verdict, "(G,3)-CH");
    ch.expect(f.graph.girth() == Some(3), format!("girth {:?}", f.graph.girth()));
    let local = f.graph.induced_subgraph(f.graph.neighbors(0))?.0;
    ch.expect(local.is_connected(), "locally connected");
    let la = local_action(&f.graph, &f.group, 0)?;
    ch.expect(la.rank == Some(3), format!("local rank {:?}", la.rank));
    let cls = theorem_1_3_classify(&f.graph, &f.group, 3)?;
    ch.expect(
        cls.case == Theorem13Case::LocallyConnected && cls.consistent,
        format!("classification {} (consistent: {})", cls.case_label, cls.consistent),
    );
    Ok(())
}

fn criterion_5(ch: &mut Checks) -> Result<()> {
    let j = c::johnson_complement(7, 2)?;
    ch.expect(j.graph.n() == 21 && j.group.order() == 5040, format!("{} vertices, |G| = {}", j.graph.n(), j.group.order()));
    ch.expect(is_kCH(&j.graph, &j.group, 3)?.verdict, "(S_7,3)-CH");
    let la = local_action(&j.graph, &j.group, 0)?;
    ch.expect(la.primitive == Some(true), "local action primitive");
    ch.expect(la.rank == Some(3), format!("local rank {:?}", la.rank));
    Ok(())
}

fn criterion_6(ch: &mut Checks) -> Result<()> {
    let q4 = c::hypercube(4)?;
    ch.expect(q4.group.order() == 384, format!("|Aut(Q_4)| = {}", q4.group.order()));
    ch.expect(is_kCH(&q4.graph, &q4.group, 4)?.verdict, "Q_4 is (Aut(Q_4),4)-CH");

    let hq = c::halved_cube(4)?;
    let r = is_kCH(&hq.graph, &hq.group, 4)?;
    let oracle = definitional_oracle(&hq.graph, &hq.group, 4, Mode::Ch)?;
    let witness_ok = match &r.witness {
        Some(w) => verify_witness(&hq.graph, &hq.group, Mode::Ch, w)?,
        None => false,
    };
    ch.expect(
        !r.verdict && witness_ok,
        format!(
            "halved 4-cube with its full automorphism group (order {}) is not 4-CH: computed 4-CH = {}, oracle = {}",
            hq.group.order(),
            r.verdict,
            oracle.verdict
        ),
    );
    if r.verdict {
        ch.note(format!(
            "the halved 4-cube is complete multipartite {:?}, which is homogeneous, so this clause cannot hold",
            hq.graph.detect_complete_multipartite()
        ));
    }
    let ind = c::halved_cube_induced(4)?;
    let r3 = is_kCH(&ind.graph, &ind.group, 3)?.verdict;
    let r4 = is_kCH(&ind.graph, &ind.group, 4)?;
    let verified = match &r4.witness {
        Some(w) => verify_witness(&ind.graph, &ind.group, Mode::Ch, w)?,
        None => false,
    };
    ch.note(format!(
        "with the group of order {} induced by Aut(Q_4): 3-CH = {}, 4-CH = {}, witness verified = {}",
        ind.group.order(),
        r3,
        r4.verdict,
        verified
    ));
    Ok(())
}

/// Construction corpus: the constructed families plus a few negative
/// instances with deliberately small groups.
pub fn corpus() -> Result<Vec<FamilyInstance>> {
    let mut out = vec![
        c::petersen()?,
        c::line_graph(&c::petersen()?)?,
        c::hamming(2, 3)?,
        c::hamming(2, 4)?,
        c::johnson(5, 2)?,
        c::johnson(6, 3)?,
        c::johnson_complement(7, 2)?,
        c::example_82(2, 2)?,
        c::example_83(2)?,
        c::example_83(3)?,
        c::folded_cube_rank3(5)?,
        c::folded_cube(5)?,
        c::hypercube(3)?,
        c::hypercube(4)?,
        c::halved_cube(5)?,
        c::halved_cube_induced(4)?,
        c::line_graph(&c::hypercube(3)?)?,
        c::cycle(7)?,
        c::complete(5)?,
        c::complete_multipartite(3, 2)?,
        c::complete_multipartite(2, 3)?,
    ];
    let h = c::hamming(2, 4)?;
    out.push(FamilyInstance::new("hamming-c:2,4", h.graph.complement(), h.group, h.labels, None)?);
    let mut regular_only = |name: &str, spec: CayleySpec| -> Result<()> {
        let mut inst = c::cayley_graph(spec)?;
        inst.name = format!("{name} (H_R only)");
        out.push(inst);
        Ok(())
    };
    regular_only("cube:3", CayleySpec::new(FiniteGroup::elementary_abelian(2, 3)?, vec![1, 2, 4])?)?;
    regular_only("cycle:6", CayleySpec::new(FiniteGroup::cyclic(6)?, vec![1, 5])?)?;
    regular_only("ex83:2", c::example_83(2)?.cayley.expect("Cayley family"))?;
    Ok(out)
}

fn oracle_in_scale(inst: &FamilyInstance) -> bool {
    inst.graph.n() <= ORACLE_MAX_VERTICES && inst.group.order() <= enumeration_bound().min(1_000_000) as u128
}

fn criterion_7(ch: &mut Checks) -> Result<()> {
    let corpus = corpus()?;
    ch.expect(corpus.len() >= 12, format!("{} corpus instances", corpus.len()));
    for inst in &corpus {
        let (g, grp) = (&inst.graph, &inst.group);
        let verdict = is_kCH(g, grp, 3)?.verdict;
        let (branch, other) = if g.girth() == Some(3) {
            ("rank-3 criterion", proposition_1_2_check(g, grp)?.verdict)
        } else {
            ("2-arc transitivity", is_s_arc_transitive(g, grp, 2)?)
        };
        let oracle = if oracle_in_scale(inst) {
            Some(definitional_oracle(g, grp, 3, Mode::Ch)?.verdict)
        } else {
            None
        };
        ch.expect(
            verdict == other && oracle.is_none_or(|o| o == verdict),
            format!(
                "{}: 3-CH = {verdict}, {branch} = {other}, oracle = {}",
                inst.name,
                oracle.map_or("out of scale".to_string(), |o| o.to_string())
            ),
        );
    }
    Ok(())
}

fn criterion_8(ch: &mut Checks) -> Result<()> {
    let q3 = c::hypercube(3)?;
    let antipodal = Permutation::from_images((0..8).map(|x| x ^ 7).collect())?;
    let n = PermGroup::new(8, vec![antipodal])?;
    let c6 = c::cycle(6)?;
    let r3 = Permutation::from_images((0..6).map(|x| (x + 3) % 6).collect())?;
    let m = PermGroup::new(6, vec![r3])?;
    for (name, inst, normal) in [("Q_3 / antipodal", &q3, &n), ("C_6 / <r^3>", &c6, &m)] {
        let r = theorem_1_4_report(&inst.graph, &inst.group, normal)?;
        ch.expect(r.hypotheses_hold(), format!("{name}: hypotheses hold"));
        ch.expect(r.semiregular, format!("{name}: N semiregular"));
        ch.expect(r.cover, format!("{name}: cover of the quotient ({} vertices)", r.quotient_vertices));
        ch.expect(r.kernel_equals_normal, format!("{name}: kernel on orbits equals N"));
        ch.expect(r.quotient_ch == Some(true), format!("{name}: quotient is (Ḡ,3)-CH, |Ḡ| = {}", r.quotient_group_order));
        ch.expect(r.local_isomorphism == Some(true), format!("{name}: local actions permutationally isomorphic"));
        ch.expect(r.verdict, format!("{name}: overall verdict"));
    }
    Ok(())
}

fn criterion_9(ch: &mut Checks) -> Result<()> {
    let cases = [
        ("C_5", CayleySpec::new(FiniteGroup::cyclic(5)?, vec![1, 4])?, 10u128),
        ("ex83:2", c::example_83(2)?.cayley.expect("Cayley family"), 72),
        ("Q_3", CayleySpec::new(FiniteGroup::elementary_abelian(2, 3)?, vec![1, 2, 4])?, 48),
    ];
    for (name, spec, expected) in cases {
        let r = lemma_2_2_check(&spec)?;
        ch.expect(
            r.holds && r.normalizer_order == expected && r.normalizer_order == r.h_order as u128 * r.aut_hs_order,
            format!(
                "{name}: |N_A(H_R)| = {} = {} * {} (|A| = {})",
                r.normalizer_order, r.h_order, r.aut_hs_order, r.aut_graph_order
            ),
        );
    }
    Ok(())
}

fn criterion_10(ch: &mut Checks) -> Result<()> {
    let p = is_cayley(&c::petersen()?.graph)?;
    ch.expect(!p.is_cayley(), format!("Petersen: no regular subgroup in Aut of order {}", p.aut_order));
    let c7 = is_cayley(&crate::graph::named::cycle(7))?;
    ch.expect(
        c7.witness().is_some_and(|w| w.order() == 7 && w.is_regular()),
        "C_7: regular Z_7 found",
    );
    let h = is_cayley(&c::hamming(2, 3)?.graph)?;
    ch.expect(
        h.witness().is_some_and(|w| w.order() == 9 && w.is_regular()),
        format!("H(2,3): {} regular subgroups up to conjugacy", h.regular.len()),
    );
    ch.expect(
        h.regular.iter().any(|w| w.is_abelian() && w.generators().iter().all(|g| g.order() <= 3)),
        "H(2,3): a regular Z_3^2 among them",
    );
    Ok(())
}

fn criterion_11(ch: &mut Checks) -> Result<()> {
    let expected = [3u128, 4, 9];
    for (row, order) in table2_rows()?.iter().zip(expected) {
        let r = table2_verify_row(row)?;
        ch.expect(
            r.holds && r.centralizer_order == order,
            format!(
                "row {}: C_{}({}) has order {}, equals the claimed location: {}",
                r.no, r.names[0], r.names[2], r.centralizer_order, r.location_matches
            ),
        );
    }
    Ok(())
}

/// Groups for the property suite: corpus groups and a few classical ones.
fn property_groups() -> Result<Vec<(String, PermGroup)>> {
    let mut out: Vec<(String, PermGroup)> =
        corpus()?.into_iter().map(|i| (i.name, i.group)).collect();
    let agl = PermGroup::new(
        5,
        vec![
            Permutation::from_images((0..5).map(|x| (x + 1) % 5).collect())?,
            Permutation::from_images((0..5).map(|x| 2 * x % 5).collect())?,
        ],
    )?;
    out.extend([
        ("S_5".to_string(), PermGroup::symmetric(5)),
        ("A_5".to_string(), PermGroup::alternating(5)),
        ("D_12".to_string(), PermGroup::dihedral(6)),
        ("AGL(1,5)".to_string(), agl),
        ("PSL(2,8)".to_string(), psl_2_8()),
        ("C_6 x C_2 intransitive".to_string(), {
            let a = Permutation::from_cycles(8, &[&[0, 1, 2, 3, 4, 5]])?;
            let b = Permutation::from_cycles(8, &[&[6, 7]])?;
            PermGroup::new(8, vec![a, b])?
        }),
    ]);
    Ok(out)
}

/// Orbit of a tuple under the generators, by breadth-first search.
fn tuple_orbit(gens: &[Permutation], src: &[usize]) -> HashSet<Vec<usize>> {
    let mut seen = HashSet::from([src.to_vec()]);
    let mut queue = VecDeque::from([src.to_vec()]);
    while let Some(t) = queue.pop_front() {
        for g in gens {
            let u = g.map_tuple(&t);
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    seen
}

/// Every orbital graph of a transitive group is connected.
fn orbital_graphs_connected(g: &PermGroup) -> Result<bool> {
    let n = g.degree();
    for sub in g.suborbits(0)? {
        if sub.contains(&0) {
            continue;
        }
        let pairs = tuple_orbit(g.generators(), &[0, sub[0]]);
        let graph = Graph::from_edges(n, pairs.iter().map(|p| (p[0].min(p[1]), p[0].max(p[1]))).collect::<HashSet<_>>())?;
        if !graph.is_connected() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn all_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).filter(|x| !t.contains(x)).map(|x| {
                    let mut u = t.clone();
                    u.push(x);
                    u
                }).collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn criterion_12(ch: &mut Checks) -> Result<()> {
    let groups = property_groups()?;
    let mut local_images = Vec::new();
    for inst in corpus()? {
        if inst.graph.edge_count() > 0 {
            let act = crate::homogeneity::local_action_group(&inst.graph, &inst.group, 0)?;
            local_images.push((format!("{} local action", inst.name), act.image().clone()));
        }
    }
    let (mut orbit_stab, mut membership, mut transporter, mut chain) = (0usize, 0usize, 0usize, 0usize);
    let mut failures = Vec::new();
    for (name, g) in &groups {
        let n = g.degree();
        for p in 0..n {
            orbit_stab += 1;
            if g.orbit(p)?.len() as u128 * g.point_stabilizer(p)?.order() != g.order() {
                failures.push(format!("{name}: orbit-stabiliser at {p}"));
            }
        }
        if g.order() <= 10_000 {
            let elements = brute_force_elements(n, g.generators());
            let set: HashSet<&Permutation> = elements.iter().collect();
            if elements.len() as u128 != g.order() {
                failures.push(format!("{name}: closure has {} elements, chain order {}", elements.len(), g.order()));
            }
            for e in &elements {
                membership += 1;
                if !g.contains(e)? {
                    failures.push(format!("{name}: element {e} rejected by sifting"));
                    break;
                }
                for i in 0..n.saturating_sub(1) {
                    let x = e.then(&Permutation::from_cycles(n, &[&[i, i + 1]])?);
                    membership += 1;
                    if g.contains(&x)? != set.contains(&x) {
                        failures.push(format!("{name}: membership of {x} disagrees"));
                    }
                }
            }
        }
        for len in [2usize, 3] {
            if n < len || (len == 3 && n > 16) {
                continue;
            }
            let src: Vec<usize> = (0..len).collect();
            let orbit = tuple_orbit(g.generators(), &src);
            for dst in all_tuples(n, len) {
                transporter += 1;
                match g.transporter(&src, &dst)? {
                    Some(t) => {
                        if t.map_tuple(&src) != dst || !g.contains(&t)? || !orbit.contains(&dst) {
                            failures.push(format!("{name}: unsound transporter {src:?} -> {dst:?}"));
                        }
                    }
                    None => {
                        if orbit.contains(&dst) {
                            failures.push(format!("{name}: missed transporter {src:?} -> {dst:?}"));
                        }
                    }
                }
            }
        }
    }
    for (name, g) in groups.iter().chain(&local_images) {
        if !g.is_transitive() || g.degree() < 2 {
            continue;
        }
        chain += 1;
        let two = g.is_k_transitive(2)?;
        let prim = g.is_primitive()?;
        let quasi = g.is_quasiprimitive()?;
        if (two && !prim) || (prim && !quasi) {
            failures.push(format!("{name}: 2-transitive {two}, primitive {prim}, quasiprimitive {quasi}"));
        }
        if prim != orbital_graphs_connected(g)? {
            failures.push(format!("{name}: primitivity disagrees with orbital graph connectivity"));
        }
    }
    ch.expect(failures.is_empty(), format!(
        "{} groups: {orbit_stab} orbit-stabiliser, {membership} membership, {transporter} transporter checks",
        groups.len()
    ));
    ch.expect(failures.is_empty(), format!("{chain} transitive groups: 2-transitive => primitive => quasiprimitive, primitivity = orbital graphs connected"));
    for f in failures.iter().take(20) {
        ch.expect(false, f.clone());
    }
    let counts = (1..=5).map(|m| connected_catalog(m).map(|c| c.len())).collect::<Result<Vec<_>>>()?;
    ch.expect(counts == [1, 1, 2, 6, 21], format!("connected pattern counts {counts:?}"));
    let all = (1..=5).map(|m| catalog(m).map(|c| c.len())).collect::<Result<Vec<_>>>()?;
    ch.expect(all == [1, 2, 4, 11, 34], format!("all pattern counts {all:?}"));
    Ok(())
}
