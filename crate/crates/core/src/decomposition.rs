//! Families of spanning-tree points: the intersection and union conditions,
//! tree sums inside `Q(G)`, and the decomposition of extreme points of
//! `Q(G)` into points of the spanning-tree polytope `K(G)`.

use num::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::descriptions::{k_description, q_description};
use crate::error::{Error, Result};
use crate::geometry::constraint::{ConstraintSystem, LinearConstraint, Sense};
use crate::geometry::linalg;
use crate::geometry::simplex::{lp_solve, Direction, LpOutcome};
use crate::graph::{DisjointSets, EdgeSet, Graph};
use crate::rational::{int, ratio, QPoint, Rational};

/// Edge sets of all Hamilton circuits, sorted. Exponential; desk scale only.
pub fn brute_force_tours(g: &Graph) -> Vec<EdgeSet> {
    let n = g.n();
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let mut visited = vec![false; n];
    let mut path: Vec<usize> = Vec::new();
    visited[0] = true;
    extend_tour(g, 0, 1, &mut visited, &mut path, &mut out);
    out.sort();
    out.dedup();
    out
}

fn extend_tour(g: &Graph, at: usize, depth: usize, visited: &mut [bool], path: &mut Vec<usize>, out: &mut Vec<EdgeSet>) {
    if depth == g.n() {
        for &(w, e) in g.neighbors(at) {
            if w == 0 && !path.contains(&e) {
                let mut edges = path.clone();
                edges.push(e);
                out.push(EdgeSet::new(edges));
            }
        }
        return;
    }
    for &(w, e) in g.neighbors(at) {
        if visited[w] {
            continue;
        }
        visited[w] = true;
        path.push(e);
        extend_tour(g, w, depth + 1, visited, path, out);
        path.pop();
        visited[w] = false;
    }
}

/// Whether `x` is the characteristic vector of a Hamilton circuit.
pub fn is_hamilton_circuit(g: &Graph, x: &QPoint) -> bool {
    if x.dim() != g.m() || g.n() < 3 {
        return false;
    }
    if !x.iter().all(|c| c.is_zero() || c.is_one()) {
        return false;
    }
    let support = x.nonzero_support();
    if support.len() != g.n() || support.iter().any(|e| g.edge(e).is_loop()) {
        return false;
    }
    let mut degree = vec![0usize; g.n()];
    for e in support.iter() {
        let ed = g.edge(e);
        degree[ed.u] += 1;
        degree[ed.v] += 1;
    }
    degree.iter().all(|&d| d == 2) && g.connected_components(&support).len() == 1
}

/// A spanning tree from Kruskal's algorithm over a random edge order
/// (a spanning forest when `g` is disconnected).
pub fn random_spanning_tree<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> EdgeSet {
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.shuffle(rng);
    let mut dsu = DisjointSets::new(g.n());
    EdgeSet::new(
        order
            .into_iter()
            .filter(|&e| {
                let ed = g.edge(e);
                dsu.union(ed.u, ed.v)
            })
            .collect(),
    )
}

fn check_family(fam: &[QPoint]) -> Result<usize> {
    let first = fam.first().ok_or_else(|| Error::domain("the family is empty"))?;
    for p in fam {
        p.check_dim(first.dim())?;
    }
    Ok(first.dim())
}

/// Intersection condition: every coordinate differs from 1 in some member.
pub fn satisfies_ic(fam: &[QPoint]) -> Result<bool> {
    let dim = check_family(fam)?;
    Ok((0..dim).all(|e| fam.iter().any(|p| !p[e].is_one())))
}

/// Union condition: every coordinate is 0 in some member.
pub fn satisfies_uc(fam: &[QPoint]) -> Result<bool> {
    let dim = check_family(fam)?;
    Ok((0..dim).all(|e| fam.iter().any(|p| p[e].is_zero())))
}

/// Outcome of [`verify_sum_in_q`]. `implication_holds` is false exactly when the
/// family satisfies the union condition but its scaled sum leaves `Q(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumCheck {
    pub union_condition: bool,
    pub intersection_condition: bool,
    pub sum: QPoint,
    pub member: bool,
    pub violated: Option<String>,
    pub implication_holds: bool,
}

/// Checks whether `(1/(n−1)) Σ x_i` lies in `Q(G)` for `n` members of `K(G)`.
pub fn verify_sum_in_q(g: &Graph, fam: &[QPoint]) -> Result<SumCheck> {
    let n = g.n();
    if fam.len() != n {
        return Err(Error::domain(format!("the family needs exactly {n} members, got {}", fam.len())));
    }
    check_family(fam)?;
    let k = k_description(g)?;
    for (i, p) in fam.iter().enumerate() {
        let m = k.membership(p)?;
        if !m.member {
            return Err(Error::domain(format!(
                "member {} is outside the spanning-tree polytope (violates {})",
                i + 1,
                m.violated.unwrap_or_default()
            )));
        }
    }
    let total = fam.iter().skip(1).fold(fam[0].clone(), |acc, p| &acc + p);
    let sum = total.scale(&ratio(1, n as i64 - 1));
    let q = q_description(g)?;
    let membership = q.membership(&sum)?;
    let union_condition = satisfies_uc(fam)?;
    Ok(SumCheck {
        union_condition,
        intersection_condition: satisfies_ic(fam)?,
        member: membership.member,
        violated: membership.violated,
        implication_holds: !union_condition || membership.member,
        sum,
    })
}

/// One spanning tree with its coefficient in a convex combination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedTree {
    #[serde(with = "crate::rational::serde_rational")]
    pub weight: Rational,
    pub tree: EdgeSet,
}

type Rows = Vec<(Vec<Rational>, Rational)>;

fn as_upper_rows(sys: &ConstraintSystem) -> (Rows, Rows) {
    let mut le = Vec::new();
    let mut eq = Vec::new();
    for c in sys.iter() {
        let row = c.dense_row(sys.dim());
        match c.sense {
            Sense::Le => le.push((row, c.rhs.clone())),
            Sense::Ge => le.push((row.into_iter().map(|v| -v).collect(), -c.rhs.clone())),
            Sense::Eq => eq.push((row, c.rhs.clone())),
        }
    }
    (le, eq)
}

fn dot(a: &[Rational], x: &QPoint) -> Rational {
    a.iter().zip(x.iter()).fold(Rational::zero(), |acc, (p, q)| acc + p * q)
}

/// Writes `y ∈ K(G)` as a convex combination of at most `m` spanning trees.
///
/// Each round takes a vertex of the smallest face of `K(G)` containing the
/// current remainder and removes as much of it as the other rows allow; at
/// least one more row becomes tight per round.
pub fn caratheodory_split(g: &Graph, y: &QPoint) -> Result<Vec<WeightedTree>> {
    let k = k_description(g)?;
    let m = k.membership(y)?;
    if !m.member {
        return Err(Error::domain(format!(
            "point is outside the spanning-tree polytope (violates {})",
            m.violated.unwrap_or_default()
        )));
    }
    let (le, _) = as_upper_rows(&k);
    let mut cur = y.clone();
    let mut w = Rational::one();
    let mut out: Vec<WeightedTree> = Vec::new();

    while w.is_positive() {
        // face of w·K containing cur: tight rows become equalities
        let mut face = ConstraintSystem::new(g.m());
        for c in k.iter() {
            let scaled_rhs = &c.rhs * &w;
            let tight = c.lhs(&cur) == scaled_rhs;
            let sense = if tight { Sense::Eq } else { c.sense };
            face.push(LinearConstraint::new(c.name.clone(), c.tag.clone(), c.coefficients().clone(), sense, c.rhs.clone()))?;
        }
        let v = match lp_solve(&face, &QPoint::zeros(g.m()), Direction::Minimize)? {
            LpOutcome::Optimal { point, .. } => point,
            _ => return Err(Error::Contradiction("the face of the spanning-tree polytope at the remainder is empty".into())),
        };
        let tree = v.nonzero_support();
        if !v.is_integral() || !g.is_spanning_tree(&tree) {
            return Err(Error::Contradiction(format!("vertex {v} of the spanning-tree description is not a spanning tree")));
        }
        let mut mu = w.clone();
        for (a, b) in &le {
            let gap_v = b - dot(a, &v);
            if gap_v.is_positive() {
                let bound = (b * &w - dot(a, &cur)) / gap_v;
                if bound < mu {
                    mu = bound;
                }
            }
        }
        if !mu.is_positive() {
            return Err(Error::Contradiction("Carathéodory step made no progress".into()));
        }
        cur = &cur - &v.scale(&mu);
        w -= &mu;
        match out.iter_mut().find(|t| t.tree == tree) {
            Some(t) => t.weight += mu,
            None => out.push(WeightedTree { weight: mu, tree }),
        }
        if out.len() > g.m().max(1) {
            return Err(Error::Contradiction("Carathéodory split used more than m trees".into()));
        }
    }
    debug_assert!(cur.is_zero());
    Ok(out)
}

/// Which branch of the construction produced a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionCase {
    /// `x` is a Hamilton circuit; the members are its Hamilton paths.
    HamiltonCircuit,
    /// `x` is fractional; a tree `T` plus `n − 1` tree combinations.
    Fractional,
}

/// The structural facts the fractional construction relies on, evaluated on
/// the instance. `A = {e : x(e) ≥ 1/(n−1)}`, `E1 = {e : x(e) = 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimChecks {
    pub heavy_edges_nonempty: bool,
    pub heavy_edges_at_least_n: bool,
    pub heavy_graph_connected: bool,
    pub unit_edges_acyclic: bool,
}

impl ClaimChecks {
    pub fn all(&self) -> bool {
        self.heavy_edges_nonempty && self.heavy_edges_at_least_n && self.heavy_graph_connected && self.unit_edges_acyclic
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub case: DecompositionCase,
    /// Exactly `n` points of `K(G)` with `x = (1/(n−1)) Σ members`.
    pub members: Vec<QPoint>,
    /// The tree `T ⊇ E1` inside the heavy-edge graph (fractional case).
    pub tree: Option<EdgeSet>,
    /// For each member after the first, the trees and masses it combines.
    pub groups: Vec<Vec<WeightedTree>>,
    pub claims: Option<ClaimChecks>,
    pub intersection_condition: bool,
    /// `x − (1/(n−1)) Σ members`; the zero vector on success.
    pub residual: QPoint,
    pub members_in_k: bool,
}

/// A direction `d ≠ 0` with `x ± εd` feasible for small `ε`, when `x` is not
/// a vertex of `sys`.
pub fn non_extreme_direction(sys: &ConstraintSystem, x: &QPoint) -> Option<QPoint> {
    let tight: Vec<Vec<Rational>> = sys.iter().filter(|c| c.is_tight(x)).map(|c| c.dense_row(sys.dim())).collect();
    linalg::null_space(&tight, sys.dim()).into_iter().next().map(QPoint::new)
}

/// Decomposes an extreme point `x` of `Q(G)` into `n` points of `K(G)` that
/// satisfy the intersection condition and average (over `n − 1`) to `x`.
pub fn decompose_extreme_point(g: &Graph, x: &QPoint) -> Result<Decomposition> {
    let n = g.n();
    let q = q_description(g)?;
    let membership = q.membership(x)?;
    if !membership.member {
        return Err(Error::domain(format!(
            "point is outside Q (violates {})",
            membership.violated.unwrap_or_default()
        )));
    }
    if let Some(d) = non_extreme_direction(&q, x) {
        return Err(Error::domain(format!("point is not extreme: it moves along direction {d}")));
    }
    let scale = ratio(1, n as i64 - 1);

    let (case, members, tree, groups, claims) = if x.is_integral() {
        if !is_hamilton_circuit(g, x) {
            return Err(Error::Contradiction(format!("integral extreme point {x} is not a Hamilton circuit")));
        }
        let circuit = x.nonzero_support();
        let members: Vec<QPoint> = circuit
            .iter()
            .map(|e| QPoint::indicator(g.m(), &circuit.difference(&EdgeSet::new(vec![e]))))
            .collect();
        (DecompositionCase::HamiltonCircuit, members, None, Vec::new(), None)
    } else {
        let heavy: Vec<usize> = (0..g.m()).filter(|&e| x[e] >= scale).collect();
        let unit = x.support_at(&int(1));
        let heavy_set = EdgeSet::new(heavy.clone());
        let claims = ClaimChecks {
            heavy_edges_nonempty: !heavy.is_empty(),
            heavy_edges_at_least_n: heavy.len() >= n,
            heavy_graph_connected: g.covered_vertices(&heavy_set).len() == n && g.connected_components(&heavy_set).len() == 1,
            unit_edges_acyclic: g.graphic_rank(&unit) == unit.len(),
        };
        if !claims.unit_edges_acyclic {
            return Err(Error::Contradiction(format!("edges at value 1 contain a cycle at {x}")));
        }
        // grow E1 greedily with heavy edges by decreasing x, ties by id
        let mut dsu = DisjointSets::new(n);
        let mut chosen: Vec<usize> = Vec::new();
        for e in unit.iter() {
            let ed = g.edge(e);
            dsu.union(ed.u, ed.v);
            chosen.push(e);
        }
        let mut order = heavy.clone();
        order.sort_by(|&a, &b| x[b].cmp(&x[a]).then(a.cmp(&b)));
        for e in order {
            let ed = g.edge(e);
            if dsu.union(ed.u, ed.v) {
                chosen.push(e);
            }
        }
        let tree = EdgeSet::new(chosen);
        if !g.is_spanning_tree(&tree) {
            return Err(Error::Contradiction(format!(
                "no spanning tree containing the unit edges exists among the heavy edges at {x}"
            )));
        }
        let t_point = QPoint::indicator(g.m(), &tree);
        let y = x - &t_point.scale(&scale);
        let k = k_description(g)?;
        let ym = k.membership(&y)?;
        if !ym.member {
            return Err(Error::Contradiction(format!(
                "x − T/(n−1) leaves the spanning-tree polytope (violates {}) at {x}",
                ym.violated.unwrap_or_default()
            )));
        }
        let split = caratheodory_split(g, &y)?;
        let groups = pack_unit_groups(&split, n - 1);
        let mut members = vec![t_point];
        for group in &groups {
            let mut p = QPoint::zeros(g.m());
            for piece in group {
                p = &p + &QPoint::indicator(g.m(), &piece.tree).scale(&piece.weight);
            }
            members.push(p);
        }
        (DecompositionCase::Fractional, members, Some(tree), groups, Some(claims))
    };

    let total = members.iter().fold(QPoint::zeros(g.m()), |acc, p| &acc + p);
    let residual = x - &total.scale(&scale);
    let k = k_description(g)?;
    let members_in_k = members.iter().all(|p| k.contains(p).unwrap_or(false));
    Ok(Decomposition {
        case,
        intersection_condition: satisfies_ic(&members)?,
        members,
        tree,
        groups,
        claims,
        residual,
        members_in_k,
    })
}

/// Packs tree masses `(n−1)·λ_j` into `count` consecutive groups of unit
/// mass, splitting a tree across a group boundary when needed.
fn pack_unit_groups(split: &[WeightedTree], count: usize) -> Vec<Vec<WeightedTree>> {
    let factor = int(count as i64);
    let mut groups: Vec<Vec<WeightedTree>> = vec![Vec::new()];
    let mut room = Rational::one();
    for t in split {
        let mut mass = &t.weight * &factor;
        while mass.is_positive() {
            if !room.is_positive() {
                groups.push(Vec::new());
                room = Rational::one();
            }
            let take = if mass < room { mass.clone() } else { room.clone() };
            groups.last_mut().expect("a group is open").push(WeightedTree {
                weight: take.clone(),
                tree: t.tree.clone(),
            });
            mass -= &take;
            room -= &take;
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vertices::enumerate_vertices;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tour_counts() {
        assert_eq!(brute_force_tours(&Graph::complete(4)).len(), 3);
        assert_eq!(brute_force_tours(&Graph::complete(5)).len(), 12);
        assert_eq!(brute_force_tours(&Graph::complete(6)).len(), 60);
        assert_eq!(brute_force_tours(&Graph::cycle(7)).len(), 1);
        assert!(brute_force_tours(&Graph::petersen()).is_empty());
        assert_eq!(brute_force_tours(&Graph::prism()).len(), 3);
    }

    #[test]
    fn hamilton_predicate() {
        let k4 = Graph::complete(4);
        for t in brute_force_tours(&k4) {
            assert!(is_hamilton_circuit(&k4, &QPoint::indicator(6, &t)));
        }
        let k6 = Graph::complete(6);
        let mut x = QPoint::zeros(k6.m());
        for (e, ed) in k6.edges().iter().enumerate() {
            if (ed.u < 3) == (ed.v < 3) {
                x[e] = int(1);
            }
        }
        assert!(!is_hamilton_circuit(&k6, &x));
    }

    #[test]
    fn conditions_on_hamilton_paths() {
        let c4 = Graph::cycle(4);
        let paths: Vec<QPoint> = (0..4)
            .map(|e| QPoint::indicator(4, &c4.all_edges().difference(&EdgeSet::new(vec![e]))))
            .collect();
        assert!(satisfies_uc(&paths).unwrap());
        assert!(satisfies_ic(&paths).unwrap());
        let all_one = vec![QPoint::from_ints(&[1, 0]), QPoint::from_ints(&[1, 1])];
        assert!(!satisfies_ic(&all_one).unwrap());
        assert!(satisfies_ic(&[]).is_err());
    }

    #[test]
    fn hamilton_paths_sum_back_to_tour() {
        let k4 = Graph::complete(4);
        let tour = &brute_force_tours(&k4)[0];
        let paths: Vec<QPoint> = tour
            .iter()
            .map(|e| QPoint::indicator(6, &tour.difference(&EdgeSet::new(vec![e]))))
            .collect();
        let check = verify_sum_in_q(&k4, &paths).unwrap();
        assert!(check.union_condition && check.member && check.implication_holds);
        assert_eq!(check.sum, QPoint::indicator(6, tour));

        // four trees sharing edge 0: its sum coordinate is 4/3
        let star = EdgeSet::new(vec![0, 1, 2]);
        let fam = vec![QPoint::indicator(6, &star); 4];
        let check = verify_sum_in_q(&k4, &fam).unwrap();
        assert!(!check.union_condition && !check.member && check.implication_holds);
        assert_eq!(check.sum[0], ratio(4, 3));
    }

    #[test]
    fn split_reproduces_its_input() {
        let k4 = Graph::complete(4);
        let tree = EdgeSet::new(vec![0, 1, 2]);
        let single = caratheodory_split(&k4, &QPoint::indicator(6, &tree)).unwrap();
        assert_eq!(single, vec![WeightedTree { weight: int(1), tree }]);

        let uniform = QPoint::new(vec![ratio(1, 2); 6]);
        let split = caratheodory_split(&k4, &uniform).unwrap();
        assert!(split.len() <= 6);
        let total: Rational = split.iter().map(|t| t.weight.clone()).sum();
        assert_eq!(total, int(1));
        let back = split.iter().fold(QPoint::zeros(6), |acc, t| &acc + &QPoint::indicator(6, &t.tree).scale(&t.weight));
        assert_eq!(back, uniform);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = QPoint::indicator(6, &random_spanning_tree(&k4, &mut rng));
        let b = QPoint::indicator(6, &EdgeSet::new(vec![0, 3, 5]));
        let mix = (&a + &b).scale(&ratio(1, 2));
        let zero_edges: Vec<usize> = (0..6).filter(|&e| mix[e].is_zero()).collect();
        for t in caratheodory_split(&k4, &mix).unwrap() {
            assert!(zero_edges.iter().all(|&e| !t.tree.contains(e)));
        }
        assert!(caratheodory_split(&k4, &QPoint::from_ints(&[1, 1, 1, 1, 0, 0])).is_err());
    }

    #[test]
    fn circuit_decomposes_into_paths() {
        let k4 = Graph::complete(4);
        let tour = QPoint::indicator(6, &brute_force_tours(&k4)[0]);
        let d = decompose_extreme_point(&k4, &tour).unwrap();
        assert_eq!(d.case, DecompositionCase::HamiltonCircuit);
        assert_eq!(d.members.len(), 4);
        assert!(d.residual.is_zero() && d.intersection_condition && d.members_in_k);

        let c4 = Graph::cycle(4);
        let d = decompose_extreme_point(&c4, &QPoint::from_ints(&[1; 4])).unwrap();
        assert_eq!(d.members.len(), 4);
        assert!(d.members.iter().all(|p| p.total() == int(3)));
    }

    #[test]
    fn rejects_points_that_are_not_extreme() {
        let k5 = Graph::complete(5);
        let centre = QPoint::new(vec![ratio(1, 2); 10]);
        assert!(matches!(decompose_extreme_point(&k5, &centre), Err(Error::Domain(_))));
    }

    #[test]
    fn extreme_points_of_q_on_k5() {
        let k5 = Graph::complete(5);
        let q = q_description(&k5).unwrap();
        let vertices = enumerate_vertices(&q).unwrap();
        let fractional = vertices.iter().filter(|v| !v.is_integral()).count();
        eprintln!("Q(K5): {} vertices, {fractional} fractional", vertices.len());
        assert_eq!(vertices.len() - fractional, 12);
        for v in vertices {
            let d = decompose_extreme_point(&k5, &v).unwrap_or_else(|e| panic!("{v}: {e}"));
            assert_eq!(d.members.len(), 5);
            assert!(d.residual.is_zero(), "{v}");
            assert!(d.intersection_condition, "{v}");
            assert!(d.members_in_k, "{v}");
            if let Some(claims) = d.claims {
                assert!(claims.all(), "{v}: {claims:?}");
            }
        }
    }

    #[test]
    fn fractional_vertex_of_the_prism() {
        let g = Graph::prism();
        let vertices = enumerate_vertices(&q_description(&g).unwrap()).unwrap();
        let fractional: Vec<&QPoint> = vertices.iter().filter(|v| !v.is_integral()).collect();
        assert_eq!(vertices.len() - fractional.len(), brute_force_tours(&g).len());
        assert!(!fractional.is_empty());
        for v in fractional {
            let d = decompose_extreme_point(&g, v).unwrap();
            assert_eq!(d.case, DecompositionCase::Fractional);
            assert_eq!(d.members.len(), 6);
            assert!(d.residual.is_zero() && d.intersection_condition && d.members_in_k);
            assert!(d.claims.unwrap().all());
            let t = d.tree.unwrap();
            assert!(g.is_spanning_tree(&t));
            assert!(v.support_at(&int(1)).is_subset(&t));
            assert!(d.groups.iter().all(|grp| grp.iter().map(|p| p.weight.clone()).sum::<Rational>() == int(1)));
        }
    }
}
