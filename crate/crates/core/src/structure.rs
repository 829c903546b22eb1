//! Polymatroidal and matroidal recognition, the linear relation graph, analytic
//! spread, and linear quotients with the depth formula `depth R/I = n - q(I) - 1`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{minimalize, Monomial, MonomialIdeal, MonomialPrime};

/// Why an ideal fails to be polymatroidal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExchangeViolation {
    /// Two generators of different degree.
    MixedDegrees { u: Monomial, v: Monomial },
    /// `deg_i(u) > deg_i(v)` but no `j` with `deg_j(u) < deg_j(v)` has `x_j u / x_i` in `I`.
    Exchange { u: Monomial, v: Monomial, i: usize },
}

/// Direct scan of the exchange property; `None` means the ideal is polymatroidal.
pub fn exchange_violation(ideal: &MonomialIdeal) -> Result<Option<ExchangeViolation>> {
    let gens = ideal.generators();
    let first = gens.first().ok_or(Error::ZeroIdeal)?;
    if let Some(v) = gens.iter().find(|g| g.degree() != first.degree()) {
        return Ok(Some(ExchangeViolation::MixedDegrees {
            u: first.clone(),
            v: v.clone(),
        }));
    }
    let set = ideal.generator_set();
    let n = ideal.n();
    let mut probe = vec![0u32; n];
    for u in gens {
        for v in gens {
            if u == v {
                continue;
            }
            for i in 0..n {
                if u.exponent(i) <= v.exponent(i) {
                    continue;
                }
                let found = (0..n).any(|j| {
                    if u.exponent(j) >= v.exponent(j) {
                        return false;
                    }
                    probe.copy_from_slice(u.exponents());
                    probe[i] -= 1;
                    probe[j] += 1;
                    set.contains(probe.as_slice())
                });
                if !found {
                    return Ok(Some(ExchangeViolation::Exchange {
                        u: u.clone(),
                        v: v.clone(),
                        i,
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_polymatroidal(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(exchange_violation(ideal)?.is_none())
}

pub fn is_matroidal(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(ideal.is_squarefree() && is_polymatroidal(ideal)?)
}

/// The graph on variables with an edge `{x_i, x_j}` whenever `x_i u = x_j v`
/// for generators `u, v`. Only edge endpoints are vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRelationGraph {
    pub n: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub components: Vec<Vec<usize>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl LinearRelationGraph {
    /// Number of connected components `s`.
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Number of vertices `r`.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let e = (i.min(j), i.max(j));
        self.edges.binary_search(&e).is_ok()
    }

    /// Components counted over a whole set of ring variables: variables that are
    /// not vertices of the graph count as singleton components.
    pub fn components_in_ring(&self, ring_vars: &[usize]) -> usize {
        let isolated = ring_vars
            .iter()
            .filter(|v| self.vertices.binary_search(v).is_err())
            .count();
        self.components.len() + isolated
    }

    /// The primes generated by the vertex sets of the components.
    pub fn component_primes(&self) -> Vec<MonomialPrime> {
        self.components
            .iter()
            .map(|c| MonomialPrime::new(c.clone()))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct GraphJson {
            vertices: Vec<usize>,
            edges: Vec<[usize; 2]>,
            components: Vec<Vec<usize>>,
        }
        let json = GraphJson {
            vertices: self.vertices.iter().map(|v| v + 1).collect(),
            edges: self.edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|v| v + 1).collect())
                .collect(),
        };
        serde_json::to_value(json).expect("plain data serializes")
    }
}

/// Builds the linear relation graph by scanning every pair of generators: `{i, j}`
/// is an edge when `u / gcd(u, v) = x_j` and `v / gcd(u, v) = x_i`.
pub fn linear_relation_graph(ideal: &MonomialIdeal) -> Result<LinearRelationGraph> {
    let gens = ideal.generators();
    if gens.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    let n = ideal.n();
    let mut edges = BTreeSet::new();
    for (k, u) in gens.iter().enumerate() {
        for v in &gens[k + 1..] {
            if u.degree() != v.degree() {
                continue;
            }
            let g = u.gcd(v);
            if u.degree() - g.degree() != 1 {
                continue;
            }
            if let (Some(j), Some(i)) = (u.colon(&g).as_variable(), v.colon(&g).as_variable()) {
                edges.insert((i.min(j), i.max(j)));
            }
        }
    }
    let mut uf = UnionFind::new(n);
    let mut is_vertex = vec![false; n];
    for &(a, b) in &edges {
        uf.union(a, b);
        is_vertex[a] = true;
        is_vertex[b] = true;
    }
    let vertices: Vec<usize> = (0..n).filter(|&v| is_vertex[v]).collect();
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for &v in &vertices {
        let root = uf.find(v);
        if slot[root] == usize::MAX {
            slot[root] = components.len();
            components.push(Vec::new());
        }
        components[slot[root]].push(v);
    }
    Ok(LinearRelationGraph {
        n,
        vertices,
        edges: edges.into_iter().collect(),
        components,
    })
}

/// `l(I) = r - s + 1` from the linear relation graph; only valid for polymatroidal ideals.
pub fn analytic_spread(ideal: &MonomialIdeal) -> Result<usize> {
    if !is_polymatroidal(ideal)? {
        return Err(Error::NotPolymatroidal);
    }
    Ok(spread_of_graph(&linear_relation_graph(ideal)?))
}

pub(crate) fn spread_of_graph(graph: &LinearRelationGraph) -> usize {
    graph.vertex_count() + 1 - graph.component_count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearQuotientsReport {
    pub order: Vec<Monomial>,
    /// `q_i` for `i = 2..=|G(I)|`: the number of variables among the minimal
    /// generators of `(u_1, ..., u_{i-1}) : u_i`.
    pub q_values: Vec<usize>,
    pub q: usize,
    /// Every colon ideal is generated by variables.
    pub linear: bool,
}

/// Linear quotients in canonical (reverse lexicographic) generator order.
pub fn linear_quotients_q(ideal: &MonomialIdeal) -> Result<LinearQuotientsReport> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    linear_quotients_in_order(ideal.n(), ideal.generators().to_vec())
}

/// Linear quotients for an explicit generator order.
pub fn linear_quotients_in_order(n: usize, order: Vec<Monomial>) -> Result<LinearQuotientsReport> {
    let mut q_values = Vec::with_capacity(order.len().saturating_sub(1));
    let mut linear = true;
    for i in 1..order.len() {
        let u = &order[i];
        let colon = minimalize(order[..i].iter().map(|w| w.colon(u)), n)?;
        let vars = colon
            .generators()
            .iter()
            .filter(|g| g.as_variable().is_some())
            .count();
        linear &= vars == colon.len();
        q_values.push(vars);
    }
    let q = q_values.iter().copied().max().unwrap_or(0);
    Ok(LinearQuotientsReport {
        order,
        q_values,
        q,
        linear,
    })
}

/// `q(I)` read off the exchange neighbours of each generator.
///
/// Valid for equigenerated ideals with linear quotients in reverse lexicographic
/// order (in particular for polymatroidal ideals). The colon at `u` is then
/// generated by the `x_j` for which some `x_k | u` with `k > j` has
/// `x_j u / x_k` in `G(I)`, since those neighbours are exactly the earlier
/// generators dividing `x_j u`.
pub fn q_by_exchange(ideal: &MonomialIdeal) -> usize {
    let set = ideal.generator_set();
    let n = ideal.n();
    let mut best = 0;
    let mut probe = vec![0u32; n];
    for u in ideal.generators() {
        let mut count = 0;
        for j in 0..n.saturating_sub(1) {
            let hit = (j + 1..n).any(|k| {
                if u.exponent(k) == 0 {
                    return false;
                }
                probe.copy_from_slice(u.exponents());
                probe[k] -= 1;
                probe[j] += 1;
                set.contains(probe.as_slice())
            });
            if hit {
                count += 1;
            }
        }
        best = best.max(count);
        if best + 1 == n {
            break;
        }
    }
    best
}

/// `depth R/I = n - q(I) - 1`, for ideals with linear quotients.
pub fn depth_polymatroidal(ideal: &MonomialIdeal) -> Result<usize> {
    let report = linear_quotients_q(ideal)?;
    if !report.linear {
        return Err(Error::NotLinearQuotients);
    }
    Ok(ideal.n().saturating_sub(report.q + 1))
}

/// Recognizes `I = p_1 ... p_d` with primes on pairwise disjoint variable sets,
/// returning the factors. Candidate factors are the components of the linear
/// relation graph plus one single-variable prime per variable dividing the gcd.
pub fn disjoint_prime_factors(ideal: &MonomialIdeal) -> Result<Option<Vec<MonomialPrime>>> {
    let info = ideal.support_and_gcd()?;
    if info.gcd.exponents().iter().any(|&e| e > 1) {
        return Ok(None);
    }
    let graph = linear_relation_graph(ideal)?;
    let mut factors = graph.component_primes();
    for v in info.gcd.support() {
        if graph.vertices.contains(&v) {
            return Ok(None);
        }
        factors.push(MonomialPrime::new(vec![v]));
    }
    factors.sort();
    let n = ideal.n();
    let mut product: Option<MonomialIdeal> = None;
    for p in &factors {
        let pi = p.to_ideal(n)?;
        product = Some(match product {
            None => pi,
            Some(acc) => acc.multiply(&pi)?,
        });
    }
    Ok(match product {
        Some(prod) if &prod == ideal => Some(factors),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, rows).unwrap()
    }

    fn example_2_11() -> MonomialIdeal {
        ideal(
            4,
            &[
                &[1, 1, 1, 0],
                &[0, 2, 1, 0],
                &[0, 1, 2, 0],
                &[1, 1, 0, 1],
                &[0, 2, 0, 1],
                &[0, 1, 0, 2],
                &[1, 0, 1, 1],
                &[0, 0, 2, 1],
                &[0, 0, 1, 2],
                &[0, 1, 1, 1],
            ],
        )
    }

    #[test]
    fn exchange_examples() {
        let v22 = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert!(is_polymatroidal(&v22).unwrap());
        assert!(!is_matroidal(&v22).unwrap());
        let squares = ideal(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(
            exchange_violation(&squares).unwrap(),
            Some(ExchangeViolation::Exchange {
                u: Monomial::new(vec![2, 0]),
                v: Monomial::new(vec![0, 2]),
                i: 0
            })
        );
        assert!(is_polymatroidal(&example_2_11()).unwrap());
        assert!(is_matroidal(&ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])).unwrap());
        assert!(matches!(
            exchange_violation(&ideal(2, &[&[1, 0], &[0, 2]])).unwrap(),
            Some(ExchangeViolation::MixedDegrees { .. })
        ));
        assert_eq!(
            is_polymatroidal(&MonomialIdeal::zero(2)),
            Err(Error::ZeroIdeal)
        );
    }

    #[test]
    fn relation_graph_examples() {
        let g = linear_relation_graph(&ideal(3, &[&[1, 1, 0], &[1, 0, 1]])).unwrap();
        assert_eq!(g.vertices, vec![1, 2]);
        assert_eq!(g.edges, vec![(1, 2)]);
        assert_eq!(g.component_count(), 1);
        assert_eq!(g.components_in_ring(&[0, 1, 2]), 2);

        let m = linear_relation_graph(&MonomialIdeal::maximal(4)).unwrap();
        assert_eq!(m.edges.len(), 6);
        assert_eq!(m.component_count(), 1);

        assert_eq!(
            g.to_json(),
            serde_json::json!({"vertices": [2, 3], "edges": [[2, 3]], "components": [[2, 3]]})
        );
    }

    #[test]
    fn analytic_spread_examples() {
        assert_eq!(analytic_spread(&MonomialIdeal::maximal(5)).unwrap(), 5);
        assert_eq!(
            analytic_spread(&ideal(3, &[&[1, 1, 0], &[1, 0, 1]])).unwrap(),
            2
        );
        assert_eq!(
            analytic_spread(&ideal(2, &[&[2, 0], &[0, 2]])),
            Err(Error::NotPolymatroidal)
        );
        // principal ideal: empty graph
        assert_eq!(analytic_spread(&ideal(2, &[&[1, 1]])).unwrap(), 1);
    }

    #[test]
    fn linear_quotient_examples() {
        let r = linear_quotients_q(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        assert_eq!(r.q_values, vec![1, 1]);
        assert_eq!(r.q, 1);
        assert!(r.linear);

        let nl = linear_quotients_q(&ideal(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]])).unwrap();
        assert!(!nl.linear);
    }

    #[test]
    fn depth_formula_examples() {
        assert_eq!(depth_polymatroidal(&MonomialIdeal::maximal(5)).unwrap(), 0);
        assert_eq!(depth_polymatroidal(&example_2_11()).unwrap(), 0);
        assert_eq!(
            depth_polymatroidal(&ideal(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]])),
            Err(Error::NotLinearQuotients)
        );
        // principal: pd = 1
        assert_eq!(depth_polymatroidal(&ideal(3, &[&[1, 1, 0]])).unwrap(), 2);
    }

    #[test]
    fn exchange_q_matches_colons() {
        for i in [
            example_2_11(),
            MonomialIdeal::maximal(4),
            ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]),
            ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]),
        ] {
            assert_eq!(q_by_exchange(&i), linear_quotients_q(&i).unwrap().q, "{i}");
        }
    }

    #[test]
    fn disjoint_prime_factor_detection() {
        let p = ideal(3, &[&[1, 1, 0], &[1, 0, 1]]);
        let f = disjoint_prime_factors(&p).unwrap().unwrap();
        assert_eq!(f, vec![MonomialPrime::new(vec![0]), MonomialPrime::new(vec![1, 2])]);
        let v = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(disjoint_prime_factors(&v).unwrap(), None);
    }
}
