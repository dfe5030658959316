use chgraph_core::constructions::build_str;
use chgraph_core::graph::io::{from_graph6, from_json, to_graph6, to_json};
use chgraph_core::group::brute_force_elements;
use chgraph_core::homogeneity::{check, definitional_oracle, Mode};
use chgraph_core::perm::{format_generator_file, parse_generator_file};
use chgraph_core::{Graph, PermGroup, Permutation};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perm_any(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max).prop_flat_map(perm)
}

fn group(n: usize) -> impl Strategy<Value = PermGroup> {
    prop::collection::vec(perm(n), 1..=3).prop_map(move |g| PermGroup::new(n, g).unwrap())
}

fn graph(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        subsequence(pairs, 0..=len).prop_map(move |e| Graph::from_edges(n, e).unwrap())
    })
}

proptest! {
    #[test]
    fn cycle_notation_round_trips(p in perm_any(12)) {
        let n = p.degree();
        prop_assert_eq!(Permutation::parse(&p.to_string(), Some(n)).unwrap(), p.clone());
        prop_assert_eq!(Permutation::parse(&p.to_image_list(), Some(n)).unwrap(), p);
    }

    #[test]
    fn composition_laws((a, b, c) in (1..9usize).prop_flat_map(|n| (perm(n), perm(n), perm(n)))) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert!(a.pow(a.order()).is_identity());
        for x in 0..a.degree() {
            prop_assert_eq!(a.then(&b).image(x), b.image(a.image(x)));
        }
    }

    #[test]
    fn generator_file_round_trips(g in (1..8usize).prop_flat_map(group)) {
        let text = format_generator_file(g.degree(), g.generators());
        let (d, gens) = parse_generator_file(&text).unwrap();
        prop_assert_eq!(d, g.degree());
        prop_assert_eq!(gens, g.generators().to_vec());
    }

    #[test]
    fn graph6_and_json_round_trip(g in graph(20)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
        prop_assert_eq!(from_json(&to_json(&g)).unwrap(), g);
    }

    #[test]
    fn order_matches_closure(g in (1..7usize).prop_flat_map(group)) {
        let all = brute_force_elements(g.degree(), g.generators());
        prop_assert_eq!(g.order(), all.len() as u128);
        for x in &all {
            prop_assert!(g.contains(x).unwrap());
        }
        let outside = PermGroup::symmetric(g.degree()).elements().unwrap();
        let members = outside.iter().filter(|x| g.contains(x).unwrap()).count();
        prop_assert_eq!(members, all.len());
    }

    #[test]
    fn orbit_stabilizer(g in (2..9usize).prop_flat_map(group), x in 0..8usize) {
        let x = x % g.degree();
        let orbit = g.orbit(x).unwrap();
        let stab = g.point_stabilizer(x).unwrap();
        prop_assert_eq!(orbit.len() as u128 * stab.order(), g.order());
        for y in &orbit {
            let t = g.transporter(&[x], &[*y]).unwrap().expect("same orbit");
            prop_assert_eq!(t.image(x), *y);
            prop_assert!(g.contains(&t).unwrap());
        }
    }

    #[test]
    fn ch_agrees_with_oracle(g in graph(7), k in 1..=4usize) {
        let aut = g.automorphism_group().unwrap();
        for mode in [Mode::Ch, Mode::Csh, Mode::Homogeneous, Mode::SetHomogeneous] {
            let fast = check(&g, &aut, k, mode).unwrap();
            let slow = definitional_oracle(&g, &aut, k, mode).unwrap();
            prop_assert_eq!(fast.verdict, slow.verdict, "{:?} k={}", mode, k);
            let present = |r: &chgraph_core::homogeneity::ChReport| {
                let mut v: Vec<String> = r
                    .patterns
                    .iter()
                    .filter(|p| p.embeddings > 0)
                    .map(|p| p.pattern.graph6.clone())
                    .collect();
                v.sort();
                v
            };
            prop_assert_eq!(present(&fast), present(&slow));
        }
    }

    #[test]
    fn automorphisms_are_automorphisms(g in graph(9)) {
        let aut = g.automorphism_group().unwrap();
        for x in aut.generators() {
            prop_assert!(g.is_automorphism(x));
        }
        let comp = g.complement().automorphism_group().unwrap();
        prop_assert!(aut.same_group(&comp));
    }
}

const FAMILIES: &[&str] = &[
    "petersen",
    "cube:3",
    "hamming:2,3",
    "johnson-c:6,2",
    "ex83:2",
    "halfcube-induced:4",
    "cycle:7",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ch_is_relabelling_invariant(i in 0..FAMILIES.len(), seed in any::<u64>(), k in 2..=4usize) {
        let inst = build_str(FAMILIES[i]).unwrap();
        let n = inst.graph.n();
        let mut images: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for j in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            images.swap(j, (s >> 33) as usize % (j + 1));
        }
        let p = Permutation::from_images(images).unwrap();
        let h = inst.graph.relabel(&p);
        let gens = inst.group.generators().iter().map(|x| p.conjugate(x)).collect();
        let conj = PermGroup::new(n, gens).unwrap();
        let a = check(&inst.graph, &inst.group, k, Mode::Ch).unwrap();
        let b = check(&h, &conj, k, Mode::Ch).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        let counts = |r: &chgraph_core::homogeneity::ChReport| {
            r.patterns.iter().map(|p| (p.embeddings, p.orbits)).collect::<Vec<_>>()
        };
        prop_assert_eq!(counts(&a), counts(&b));
        prop_assert_eq!(conj.order(), inst.group.order());
    }
}
