//! Property tests over random monomial ideals and the exhaustive
//! polymatroidal and matroidal families.

mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use polymat::decomposition::{ass_colon_oracle, ass_polymatroidal_fast, verify_decomposition};
use polymat::families::{
    almost_squarefree_veronese, enumerate_matroidal, enumerate_polymatroidal, product_of_primes,
    squarefree_veronese, veronese_type, EnumerationMode, VeroneseSpec,
};
use polymat::format::{format_ideal, ideal_to_json, parse_ideal};
use polymat::monomial::minimalize;
use polymat::stability::relation_witness;
use polymat::structure::{
    depth_polymatroidal, linear_quotients_in_order, q_by_exchange,
};
use polymat::{
    associated_primes, betti_table, depth_oracle, irreducible_decomposition, is_matroidal,
    is_polymatroidal, linear_relation_graph, stability_report, HomologyBudget, Monomial,
    MonomialIdeal, MonomialPrime, StabilityIndex, StabilityOptions,
};

use common::*;

fn monomial(n: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, n)
        .prop_filter("non-constant", |e| e.iter().any(|&x| x > 0))
        .prop_map(Monomial::new)
}

fn ideal_in(n: usize, max_exp: u32, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(monomial(n, max_exp), 1..=max_gens)
        .prop_map(move |g| MonomialIdeal::new(n, g).unwrap())
}

fn small_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (1usize..=4).prop_flat_map(|n| ideal_in(n, 3, 5))
}

fn squarefree_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (2usize..=5).prop_flat_map(|n| ideal_in(n, 1, 6))
}

fn polymatroidal_family() -> &'static [MonomialIdeal] {
    static CELL: OnceLock<Vec<MonomialIdeal>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for (n, d) in [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3)] {
            out.extend(enumerate_polymatroidal(n, d, EnumerationMode::Exhaustive).unwrap());
        }
        out
    })
}

fn matroidal_family() -> &'static [MonomialIdeal] {
    static CELL: OnceLock<Vec<MonomialIdeal>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for (n, d) in [(3, 2), (4, 2), (5, 2), (4, 3), (5, 3), (6, 3), (5, 4), (6, 2)] {
            out.extend(enumerate_matroidal(n, d, EnumerationMode::Exhaustive).unwrap());
        }
        out
    })
}

fn polymatroidal() -> impl Strategy<Value = MonomialIdeal> {
    prop::sample::select(polymatroidal_family())
}

fn matroidal() -> impl Strategy<Value = MonomialIdeal> {
    prop::sample::select(matroidal_family())
}

fn all_primes(n: usize) -> Vec<MonomialPrime> {
    (1u32..1 << n)
        .map(|mask| MonomialPrime::new((0..n).filter(|v| mask >> v & 1 == 1).collect()))
        .collect()
}

fn outside(n: usize, p: &MonomialPrime) -> Monomial {
    let vars: Vec<usize> = (0..n).filter(|v| !p.contains(*v)).collect();
    Monomial::squarefree(n, &vars)
}

fn degree(i: &MonomialIdeal) -> usize {
    i.equigenerated_degree().unwrap() as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn text_format_round_trips(i in small_ideal()) {
        prop_assert_eq!(parse_ideal(&format_ideal(&i)).unwrap(), i.clone());
        let json = ideal_to_json(&i);
        prop_assert_eq!(json["n"].as_u64().unwrap() as usize, i.n());
        prop_assert_eq!(json["generators"].as_array().unwrap().len(), i.len());
    }

    #[test]
    fn minimalize_is_idempotent_and_order_free(i in small_ideal(), seed in any::<u64>()) {
        let again = minimalize(i.generators().to_vec(), i.n()).unwrap();
        prop_assert_eq!(&again, &i);
        let mut shuffled = i.generators().to_vec();
        let k = shuffled.len();
        shuffled.rotate_left(seed as usize % k);
        shuffled.reverse();
        prop_assert_eq!(minimalize(shuffled, i.n()).unwrap(), i);
    }

    #[test]
    fn products_commute_and_powers_add(
        (a, b) in (1usize..=3).prop_flat_map(|n| (ideal_in(n, 2, 3), ideal_in(n, 2, 3))),
        s in 1u32..=3,
        t in 1u32..=3,
    ) {
        prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
        let lhs = a.power(s + t).unwrap();
        let rhs = a.power(s).unwrap().multiply(&a.power(t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn localization_is_saturation(i in small_ideal()) {
        let n = i.n();
        for p in all_primes(n) {
            let local = i.localize(&p);
            let sat = i.saturate(&outside(n, &p));
            prop_assert_eq!(local.is_ok(), sat.is_ok());
            if let (Ok(l), Ok(s)) = (local, sat) {
                prop_assert_eq!(l, s);
            }
        }
    }

    #[test]
    fn squarefree_localization_is_one_colon(i in squarefree_ideal()) {
        let n = i.n();
        for p in all_primes(n) {
            let u = outside(n, &p);
            match (i.localize(&p), i.colon(&u)) {
                (Ok(l), Ok(c)) => prop_assert_eq!(l, c),
                (l, c) => prop_assert_eq!(l.is_err(), c.is_err()),
            }
        }
    }

    #[test]
    fn colon_by_product_is_iterated(
        (i, u, v) in (1usize..=4).prop_flat_map(|n| (ideal_in(n, 3, 5), monomial(n, 2), monomial(n, 2))),
    ) {
        let direct = i.colon(&u.checked_mul(&v).unwrap());
        let iterated = i.colon(&u).and_then(|c| c.colon(&v));
        match (direct, iterated) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }

    #[test]
    fn decomposition_intersects_to_the_ideal(i in small_ideal(), probe in prop::collection::vec(0u32..=4, 4)) {
        let comps = irreducible_decomposition(&i).unwrap();
        prop_assert!(verify_decomposition(&i, &comps).unwrap());
        let v = Monomial::new(probe[..i.n()].to_vec());
        prop_assert_eq!(i.contains(&v), comps.iter().all(|c| c.contains(&v)));
    }

    #[test]
    fn ass_matches_colon_scan(i in small_ideal()) {
        let by_colon = ass_colon_oracle(&i, 1 << 20).unwrap();
        prop_assert_eq!(associated_primes(&i).unwrap(), by_colon);
    }

    #[test]
    fn homology_invariants(i in (1usize..=4).prop_flat_map(|n| ideal_in(n, 2, 5)), seed in any::<u64>()) {
        let budget = HomologyBudget::default();
        let table = betti_table(&i, &budget).unwrap();
        prop_assert_eq!(table.depth + table.pd, i.n());
        let zero: usize = table.entries.iter().filter(|e| e.i == 0).map(|e| e.rank).sum();
        prop_assert_eq!(zero, i.len());
        // relabel variables and compare the permuted table
        let n = i.n();
        let shift = seed as usize % n;
        let perm: Vec<usize> = (0..n).map(|v| (v + shift) % n).collect();
        let moved = betti_table(&i.permute(&perm).unwrap(), &budget).unwrap();
        prop_assert_eq!(moved.pd, table.pd);
        let ranks = |t: &polymat::BettiTable| {
            let mut r: Vec<(usize, u64, usize)> =
                t.entries.iter().map(|e| (e.i, e.degree.degree(), e.rank)).collect();
            r.sort();
            r
        };
        prop_assert_eq!(ranks(&moved), ranks(&table));
        let m = polymat::MonomialPrime::maximal(n);
        prop_assert_eq!(table.depth == 0, associated_primes(&i).unwrap().contains(&m));
    }

    #[test]
    fn polymatroidal_closure(i in polymatroidal(), u in prop::collection::vec(0u32..=2, 4)) {
        let n = i.n();
        for k in 1..=4 {
            prop_assert!(is_polymatroidal(&i.power(k).unwrap()).unwrap());
        }
        if let Ok(c) = i.colon(&Monomial::new(u[..n].to_vec())) {
            prop_assert!(is_polymatroidal(&c).unwrap());
        }
        for p in all_primes(n) {
            if let Ok(l) = i.localize(&p) {
                prop_assert!(is_polymatroidal(&l.restrict(p.vars()).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn q_is_order_independent(i in polymatroidal()) {
        let mut lex = i.generators().to_vec();
        lex.sort_by(|a, b| b.lex_cmp(a));
        let by_lex = linear_quotients_in_order(i.n(), lex).unwrap();
        let by_revlex = polymat::structure::linear_quotients_q(&i).unwrap();
        if by_lex.linear && by_revlex.linear {
            prop_assert_eq!(by_lex.q, by_revlex.q);
        }
        prop_assert!(by_revlex.linear);
        prop_assert_eq!(by_revlex.q, q_by_exchange(&i));
    }

    #[test]
    fn depth_formula_and_oracle_agree(i in polymatroidal()) {
        let formula = depth_polymatroidal(&i).unwrap();
        prop_assert_eq!(formula, depth_oracle(&i).unwrap());
        let table = betti_table(&i, &HomologyBudget::default()).unwrap();
        prop_assert_eq!(table.pd, q_by_exchange(&i) + 1);
    }

    #[test]
    fn fast_ass_matches_decomposition(i in polymatroidal(), t in 1u32..=3) {
        let power = i.power(t).unwrap();
        prop_assert_eq!(ass_polymatroidal_fast(&power).unwrap(), associated_primes(&power).unwrap());
    }

    #[test]
    fn ass_persists_and_depth_falls(i in polymatroidal()) {
        let mut prev: Option<(polymat::AssociatedPrimesSet, usize)> = None;
        for k in 1..=5 {
            let p = i.power(k).unwrap();
            let ass = associated_primes(&p).unwrap();
            let depth = depth_polymatroidal(&p).unwrap();
            if let Some((a, d)) = &prev {
                prop_assert!(a.is_subset_of(&ass));
                prop_assert!(depth <= *d);
            }
            prev = Some((ass, depth));
        }
    }

    #[test]
    fn localization_keeps_graph_edges(i in matroidal()) {
        let n = i.n();
        let g = linear_relation_graph(&i).unwrap();
        for k in 0..n {
            let p = MonomialPrime::omitting(n, &[k]);
            let Ok(local) = i.localize(&p) else { continue };
            let lg = linear_relation_graph(&local).unwrap();
            for &(a, b) in &lg.edges {
                prop_assert!(g.has_edge(a, b));
            }
            let ring: Vec<usize> = p.vars().to_vec();
            prop_assert!(lg.components_in_ring(&ring) >= g.components_in_ring(&(0..n).collect::<Vec<_>>()));
        }
    }

    #[test]
    fn matroidal_structure(i in matroidal()) {
        let d = degree(&i);
        let s = linear_relation_graph(&i).unwrap().component_count();
        prop_assert!(s <= d);
        prop_assert_eq!(depth_oracle(&i).unwrap(), d - 1);
        if d > 1 && s < d {
            let w = relation_witness(&i);
            prop_assert!(w.is_some());
            let w = w.unwrap();
            let xi = Monomial::var(i.n(), w.i);
            let xj = Monomial::var(i.n(), w.j);
            prop_assert_eq!(xi.checked_mul(&w.u).unwrap(), xj.checked_mul(&w.v).unwrap());
            prop_assert!(xi.checked_mul(&xj).unwrap().divides(&w.w));
            for m in [&w.u, &w.v, &w.w] {
                prop_assert!(i.generators().contains(m));
            }
        }
        let r = stability_report(&i, &StabilityOptions::default()).unwrap();
        prop_assert!(r.certified);
        let one = StabilityIndex::Stable(1);
        prop_assert_eq!(r.astab == one, r.dstab == one);
        prop_assert_eq!(r.dstab == one, is_product_of_disjoint_primes(&i, d));
        if r.dstab != one {
            prop_assert!(r.depth_at(2).unwrap() < r.depth_at(1).unwrap());
        }
    }

    #[test]
    fn veronese_types_are_polymatroidal(
        spec in (1usize..=4, 1u32..=3).prop_flat_map(|(n, d)| {
            prop::collection::vec(1..=d, n).prop_filter_map("caps too small", move |mut caps| {
                caps.sort_unstable();
                VeroneseSpec::new(n, d, caps).ok()
            })
        })
    ) {
        let ideal = veronese_type(&spec).unwrap();
        prop_assert!(is_polymatroidal(&ideal).unwrap());
        if spec.caps().iter().all(|&a| a == 1) {
            prop_assert!(is_matroidal(&ideal).unwrap());
        }
    }

    #[test]
    fn products_of_disjoint_primes_are_stable(
        assignment in (2usize..=6).prop_flat_map(|n| prop::collection::vec(0usize..3, n))
    ) {
        let n = assignment.len();
        let parts: Vec<Vec<usize>> = (0..3)
            .map(|b| (0..n).filter(|&v| assignment[v] == b).collect::<Vec<_>>())
            .filter(|p| !p.is_empty())
            .collect();
        let ideal = product_of_primes(n, &parts).unwrap();
        // variables in singleton parts have no edges and count as their own component
        let ring: Vec<usize> = (0..n).collect();
        prop_assert_eq!(linear_relation_graph(&ideal).unwrap().components_in_ring(&ring), parts.len());
        let r = stability_report(&ideal, &StabilityOptions::default()).unwrap();
        prop_assert_eq!(r.astab, StabilityIndex::Stable(1));
        prop_assert_eq!(r.dstab, StabilityIndex::Stable(1));
    }
}

#[test]
fn almost_veronese_keeps_maximal_ideal_stably_associated() {
    for n in 3..=6usize {
        for d in 2..n as u32 {
            let full = squarefree_veronese(n, d).unwrap();
            for u in full.generators() {
                let j = almost_squarefree_veronese(n, d, Some(u)).unwrap();
                let info = j.support_and_gcd().unwrap();
                if !info.gcd.is_one() {
                    continue;
                }
                let r = stability_report(&j, &StabilityOptions::default()).unwrap();
                assert!(r.certified && r.m_in_stable_ass(), "{j}");
            }
        }
    }
}

#[test]
fn exhaustive_matroidal_matches_brute_force() {
    // every square-free quadric subset on 4 variables, filtered by exchange
    let cands = squarefree_veronese(4, 2).unwrap().generators().to_vec();
    let mut expected = Vec::new();
    for mask in 1u32..1 << cands.len() {
        let gens: Vec<Monomial> = (0..cands.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| cands[k].clone())
            .collect();
        let ideal = MonomialIdeal::new(4, gens).unwrap();
        let info = ideal.support_and_gcd().unwrap();
        if info.full_supported && info.gcd.is_one() && is_matroidal(&ideal).unwrap() {
            expected.push(ideal);
        }
    }
    let mut got = enumerate_matroidal(4, 2, EnumerationMode::Exhaustive).unwrap();
    expected.sort_by_key(format_ideal);
    got.sort_by_key(format_ideal);
    assert_eq!(got, expected);
}
