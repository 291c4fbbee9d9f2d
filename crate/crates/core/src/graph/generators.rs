//! Generators for every graph family used by the solver, strategies and campaigns.

use serde::Serialize;

use super::{Graph, GraphError};

/// Accumulates labeled vertices and edges, then builds a [`Graph`].
#[derive(Default)]
pub(crate) struct Builder {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    pub(crate) fn vertex(&mut self, label: impl Into<String>) -> usize {
        self.labels.push(label.into());
        self.labels.len() - 1
    }

    pub(crate) fn edge(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    pub(crate) fn triangle(&mut self, names: [&str; 3]) -> [usize; 3] {
        let t = names.map(|s| self.vertex(s));
        self.edge(t[0], t[1]);
        self.edge(t[1], t[2]);
        self.edge(t[0], t[2]);
        t
    }

    /// Diamond `x1..x4` with edges 12, 23, 34, 41, 24; `x1`, `x3` are the tips.
    pub(crate) fn diamond(&mut self, names: [&str; 4]) -> [usize; 4] {
        let d = names.map(|s| self.vertex(s));
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)] {
            self.edge(d[a], d[b]);
        }
        d
    }

    pub(crate) fn build(self) -> Graph {
        let mut g = Graph::from_edges(self.labels.len(), &self.edges)
            .expect("generator produced a simple graph");
        for (v, l) in self.labels.into_iter().enumerate() {
            g.set_label(v, l);
        }
        g
    }
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut g = Graph::empty(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n).unwrap();
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for i in 1..n {
        g.add_edge(i - 1, i).unwrap();
    }
    g
}

/// `K_{1,leaves}` with the center at vertex 0.
pub fn star(leaves: usize) -> Graph {
    let mut g = Graph::empty(leaves + 1);
    for i in 1..=leaves {
        g.add_edge(0, i).unwrap();
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::empty(a + b);
    for i in 0..a {
        for j in 0..b {
            g.add_edge(i, a + j).unwrap();
        }
    }
    g
}

/// `GP(n, k)`: outer cycle `u_i u_{i+1}`, spokes `u_i v_i`, inner edges `v_i v_{i+k}`.
/// Vertex `u_i` is `i` and `v_i` is `n + i`.
pub fn generalized_petersen(n: usize, k: usize) -> Result<Graph, GraphError> {
    if n < 3 || k < 1 || 2 * k >= n {
        return Err(GraphError::InvalidParameter(format!(
            "GP(n, k) needs n >= 3 and 1 <= k < n/2, got n={n}, k={k}"
        )));
    }
    let mut g = Graph::empty(2 * n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n)?;
        g.add_edge(i, n + i)?;
        g.add_edge(n + i, n + (i + k) % n)?;
    }
    for i in 0..n {
        g.set_label(i, format!("u{i}"));
        g.set_label(n + i, format!("v{i}"));
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NecklaceKind {
    Diamond,
    Claw,
}

/// Cyclic chains of diamonds or claws.
///
/// Diamonds `Z^i` (tips `z1`, `z3`, missing edge `z1 z3`) are linked `z3^i - z1^{i+1}`.
/// For two claws the edge set is `x1x2, y1y2, z1z2, x1y2, y1z2, z1x2`; from three claws
/// on, consecutive claws are joined leaf to leaf (`x_i x_{i+1}`, ...) around a cycle.
pub fn necklace(kind: NecklaceKind, count: usize) -> Result<Graph, GraphError> {
    if count < 2 {
        return Err(GraphError::InvalidParameter(format!(
            "necklace needs at least 2 parts, got {count}"
        )));
    }
    let mut b = Builder::default();
    match kind {
        NecklaceKind::Diamond => {
            let ds: Vec<[usize; 4]> = (1..=count)
                .map(|i| {
                    let names = [1, 2, 3, 4].map(|j| format!("z{j}@D{i}"));
                    b.diamond([&names[0], &names[1], &names[2], &names[3]])
                })
                .collect();
            for i in 0..count {
                b.edge(ds[i][2], ds[(i + 1) % count][0]);
            }
        }
        NecklaceKind::Claw => {
            let claws: Vec<[usize; 4]> = (1..=count)
                .map(|i| {
                    let t = b.vertex(format!("t{i}"));
                    let leaves = ["x", "y", "z"].map(|p| b.vertex(format!("{p}{i}")));
                    for &l in &leaves {
                        b.edge(t, l);
                    }
                    [leaves[0], leaves[1], leaves[2], t]
                })
                .collect();
            if count == 2 {
                let (c1, c2) = (claws[0], claws[1]);
                for (a, bb) in [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (2, 0)] {
                    b.edge(c1[a], c2[bb]);
                }
            } else {
                for i in 0..count {
                    let (c, d) = (claws[i], claws[(i + 1) % count]);
                    for leaf in 0..3 {
                        b.edge(c[leaf], d[leaf]);
                    }
                }
            }
        }
    }
    Ok(b.build())
}

/// Replaces every vertex of a cubic graph by a triangle.
pub fn truncate(g: &Graph) -> Result<Graph, GraphError> {
    if !g.is_cubic() {
        return Err(GraphError::NotCubic);
    }
    let n = g.n();
    let corner = |v: usize, j: usize| 3 * v + j;
    let mut t = Graph::empty(3 * n);
    for v in 0..n {
        t.add_edge(corner(v, 0), corner(v, 1))?;
        t.add_edge(corner(v, 1), corner(v, 2))?;
        t.add_edge(corner(v, 0), corner(v, 2))?;
        for j in 0..3 {
            t.set_label(corner(v, j), format!("{}.{j}", g.display_name(v)));
        }
    }
    for (a, b) in g.edges() {
        let ja = g.neighbors(a).iter().position(|&x| x == b).unwrap();
        let jb = g.neighbors(b).iter().position(|&x| x == a).unwrap();
        t.add_edge(corner(a, ja), corner(b, jb))?;
    }
    Ok(t)
}

/// Cubic bipartite circulant: `u_i ~ v_i, v_{i+1}, v_{i+2}` (indices mod `m`).
/// Vertex `u_i` is `i` and `v_i` is `m + i`.
pub fn bipartite_circulant(m: usize) -> Result<Graph, GraphError> {
    if m < 3 {
        return Err(GraphError::InvalidParameter(format!(
            "bipartite circulant needs m >= 3, got {m}"
        )));
    }
    let mut g = Graph::empty(2 * m);
    for i in 0..m {
        for d in 0..3 {
            g.add_edge(i, m + (i + d) % m)?;
        }
    }
    for i in 0..m {
        g.set_label(i, format!("u{i}"));
        g.set_label(m + i, format!("v{i}"));
    }
    Ok(g)
}

/// The 18-vertex graph `η`: a central diamond `H` whose tips `h1`, `h3` hang off triangles
/// `Y` and `W`; each triangle's remaining two vertices meet the tips of one more diamond
/// (`K` for `Y`, `M` for `W`).
pub fn eta() -> Graph {
    let mut b = Builder::default();
    let h = b.diamond(["h1", "h2", "h3", "h4"]);
    let y = b.triangle(["y1", "y2", "y3"]);
    let w = b.triangle(["w1", "w2", "w3"]);
    let k = b.diamond(["k1", "k2", "k3", "k4"]);
    let m = b.diamond(["m1", "m2", "m3", "m4"]);
    b.edge(h[0], y[0]);
    b.edge(h[2], w[0]);
    b.edge(y[1], k[0]);
    b.edge(y[2], k[2]);
    b.edge(w[1], m[0]);
    b.edge(w[2], m[2]);
    b.build()
}

/// `ω(chain_len)`: triangles `A`, `B`, diamond `H` and a chain of `chain_len` diamonds
/// `D1..Dm` running from `a2` back to `a3`.
pub fn omega(chain_len: usize) -> Result<Graph, GraphError> {
    if chain_len < 1 {
        return Err(GraphError::InvalidParameter("omega needs at least one chain diamond".into()));
    }
    let mut b = Builder::default();
    let a = b.triangle(["a1", "a2", "a3"]);
    let bt = b.triangle(["b1", "b2", "b3"]);
    let h = b.diamond(["h1", "h2", "h3", "h4"]);
    let chain: Vec<[usize; 4]> = (1..=chain_len)
        .map(|i| {
            let names = [1, 2, 3, 4].map(|j| format!("z{j}@D{i}"));
            b.diamond([&names[0], &names[1], &names[2], &names[3]])
        })
        .collect();
    b.edge(a[0], bt[0]);
    b.edge(bt[1], h[0]);
    b.edge(bt[2], h[2]);
    b.edge(a[1], chain[0][0]);
    for i in 1..chain_len {
        b.edge(chain[i - 1][2], chain[i][0]);
    }
    b.edge(chain[chain_len - 1][2], a[2]);
    Ok(b.build())
}

/// Two triangles and one diamond: `a1h1, a2b2, a3b3, b1h3`. The unique connected cubic
/// graph of order 10 built from these pieces with a double edge between the triangles.
pub fn two_triangles_one_diamond() -> Graph {
    let mut b = Builder::default();
    let a = b.triangle(["a1", "a2", "a3"]);
    let t = b.triangle(["b1", "b2", "b3"]);
    let h = b.diamond(["h1", "h2", "h3", "h4"]);
    b.edge(a[0], h[0]);
    b.edge(a[1], t[1]);
    b.edge(a[2], t[2]);
    b.edge(t[0], h[2]);
    b.build()
}

/// Hamiltonian cubic graph from LCF notation `shifts` repeated `repeats` times.
pub fn lcf(shifts: &[isize], repeats: usize) -> Result<Graph, GraphError> {
    let n = shifts.len() * repeats;
    if n < 4 {
        return Err(GraphError::InvalidParameter("LCF graph needs at least 4 vertices".into()));
    }
    let mut g = cycle(n);
    for i in 0..n {
        let s = shifts[i % shifts.len()];
        let j = (i as isize + s).rem_euclid(n as isize) as usize;
        if i < j || !g.has_edge(i, j) {
            match g.add_edge(i, j) {
                Ok(()) | Err(GraphError::DuplicateEdge(..)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(g)
}

/// The Heawood graph (LCF `[5, -5]^7`), cubic bipartite on 14 vertices.
pub fn heawood() -> Graph {
    lcf(&[5, -5], 7).expect("valid LCF")
}

/// Named families with their parameter schemas, for the CLI and HTTP catalog.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub description: &'static str,
}

pub const FAMILIES: &[FamilyInfo] = &[
    FamilyInfo { name: "gp", params: &["n", "k"], description: "generalized Petersen graph GP(n,k), 1 <= k < n/2" },
    FamilyInfo { name: "diamond-necklace", params: &["count"], description: "cyclic chain of diamonds" },
    FamilyInfo { name: "claw-necklace", params: &["count"], description: "claws joined leaf to leaf" },
    FamilyInfo { name: "circulant", params: &["m"], description: "cubic bipartite circulant on 2m vertices" },
    FamilyInfo { name: "eta", params: &[], description: "the 18-vertex graph eta" },
    FamilyInfo { name: "omega", params: &["chain"], description: "omega with a chain of diamonds" },
    FamilyInfo { name: "truncated-k4", params: &[], description: "truncated tetrahedron" },
    FamilyInfo { name: "prism", params: &[], description: "triangular prism" },
    FamilyInfo { name: "complete", params: &["n"], description: "complete graph K_n" },
    FamilyInfo { name: "cycle", params: &["n"], description: "cycle C_n" },
    FamilyInfo { name: "k33", params: &[], description: "complete bipartite K_{3,3}" },
    FamilyInfo { name: "heawood", params: &[], description: "Heawood graph" },
    FamilyInfo { name: "two-triangles-diamond", params: &[], description: "10-vertex triangle/diamond graph" },
];

/// Builds a catalog family from its name and positional parameters.
pub fn generate_family(name: &str, params: &[usize]) -> Result<Graph, GraphError> {
    let info = FAMILIES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| GraphError::InvalidParameter(format!("unknown family {name:?}")))?;
    if params.len() != info.params.len() {
        return Err(GraphError::InvalidParameter(format!(
            "family {name} expects parameters {:?}, got {} values",
            info.params,
            params.len()
        )));
    }
    match name {
        "gp" => generalized_petersen(params[0], params[1]),
        "diamond-necklace" => necklace(NecklaceKind::Diamond, params[0]),
        "claw-necklace" => necklace(NecklaceKind::Claw, params[0]),
        "circulant" => bipartite_circulant(params[0]),
        "eta" => Ok(eta()),
        "omega" => omega(params[0]),
        "truncated-k4" => truncate(&complete(4)),
        "prism" => generalized_petersen(3, 1),
        "complete" => Ok(complete(params[0])),
        "cycle" if params[0] >= 3 => Ok(cycle(params[0])),
        "cycle" => Err(GraphError::InvalidParameter("cycle needs n >= 3".into())),
        "k33" => Ok(complete_bipartite(3, 3)),
        "heawood" => Ok(heawood()),
        "two-triangles-diamond" => Ok(two_triangles_one_diamond()),
        _ => unreachable!("catalog and dispatch agree"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force isomorphism over all permutations; fine for up to ~8 vertices.
    fn isomorphic(a: &Graph, b: &Graph) -> bool {
        if a.n() != b.n() || a.edge_count() != b.edge_count() {
            return false;
        }
        let n = a.n();
        let mut perm: Vec<usize> = (0..n).collect();
        fn rec(k: usize, perm: &mut Vec<usize>, a: &Graph, b: &Graph) -> bool {
            if k == perm.len() {
                return a.edges().iter().all(|&(x, y)| b.has_edge(perm[x], perm[y]));
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                if rec(k + 1, perm, a, b) {
                    return true;
                }
                perm.swap(k, i);
            }
            false
        }
        rec(0, &mut perm, a, b)
    }

    #[test]
    fn petersen_graph() {
        let g = generalized_petersen(5, 2).unwrap();
        assert_eq!((g.n(), g.edge_count()), (10, 15));
        assert_eq!(g.girth(), Some(5));
        assert!(g.is_cubic());
    }

    #[test]
    fn gp_9_2_size() {
        let g = generalized_petersen(9, 2).unwrap();
        assert_eq!((g.n(), g.edge_count()), (18, 27));
    }

    #[test]
    fn gp_3_1_is_k3_box_k2() {
        let g = generalized_petersen(3, 1).unwrap();
        // K3 x K2 built directly.
        let mut prism = Graph::empty(6);
        for (a, b) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)] {
            prism.add_edge(a, b).unwrap();
        }
        assert!(isomorphic(&g, &prism));
    }

    #[test]
    fn gp_rejects_bad_parameters() {
        assert!(generalized_petersen(2, 1).is_err());
        assert!(generalized_petersen(6, 3).is_err());
        assert!(generalized_petersen(6, 0).is_err());
    }

    #[test]
    fn gp_family_is_cubic() {
        for n in 3..=30 {
            for k in 1..n {
                if 2 * k >= n {
                    break;
                }
                let g = generalized_petersen(n, k).unwrap();
                assert_eq!(g.n(), 2 * n);
                assert_eq!(g.edge_count(), 3 * n);
                assert!(g.is_cubic(), "GP({n},{k})");
            }
        }
    }

    #[test]
    fn necklaces() {
        let d2 = necklace(NecklaceKind::Diamond, 2).unwrap();
        assert_eq!((d2.n(), d2.edge_count()), (8, 12));
        assert!(d2.is_cubic() && d2.is_connected());

        let c2 = necklace(NecklaceKind::Claw, 2).unwrap();
        assert_eq!(c2.n(), 8);
        assert!(c2.is_cubic() && c2.is_connected());
        for (a, b) in ["x1-x2", "y1-y2", "z1-z2", "x1-y2", "y1-z2", "z1-x2"]
            .iter()
            .map(|e| e.split_once('-').unwrap())
        {
            assert!(c2.has_edge(c2.v(a), c2.v(b)), "{a}-{b}");
        }
        // Both C4 parts of the two-claw graph.
        for cyc in [["x1", "t1", "y1", "y2"], ["z1", "z2", "t2", "x2"]] {
            for i in 0..4 {
                assert!(c2.has_edge(c2.v(cyc[i]), c2.v(cyc[(i + 1) % 4])));
            }
        }

        let c3 = necklace(NecklaceKind::Claw, 3).unwrap();
        assert_eq!(c3.n(), 12);
        assert!(c3.is_cubic() && c3.is_connected());
        for l in ["x", "y", "z"] {
            assert!(c3.has_edge(c3.v(&format!("{l}1")), c3.v(&format!("{l}3"))));
        }
        assert!(necklace(NecklaceKind::Claw, 1).is_err());
    }

    #[test]
    fn truncation() {
        let t = truncate(&complete(4)).unwrap();
        assert_eq!((t.n(), t.edge_count()), (12, 18));
        assert!(t.is_cubic());
        let t33 = truncate(&complete_bipartite(3, 3)).unwrap();
        assert_eq!(t33.n(), 18);
        assert!(t33.is_cubic());
        assert_eq!(truncate(&cycle(4)), Err(GraphError::NotCubic));
    }

    #[test]
    fn circulants() {
        let g3 = bipartite_circulant(3).unwrap();
        assert!(isomorphic(&g3, &complete_bipartite(3, 3)));
        let g5 = bipartite_circulant(5).unwrap();
        assert_eq!((g5.n(), g5.edge_count()), (10, 15));
        assert!(g5.two_coloring().is_some());
        let g4 = bipartite_circulant(4).unwrap();
        assert!(g4.is_cubic());
        assert_eq!(g4.girth(), Some(4));
        assert!(bipartite_circulant(2).is_err());
    }

    #[test]
    fn eta_and_omega() {
        let e = eta();
        assert_eq!((e.n(), e.edge_count()), (18, 27));
        assert!(e.is_cubic() && e.is_connected());
        let o1 = omega(1).unwrap();
        assert_eq!(o1.n(), 14);
        assert!(o1.is_cubic() && o1.is_connected());
        let o3 = omega(3).unwrap();
        assert_eq!(o3.n(), 22);
        assert!(o3.is_cubic() && o3.is_connected());
        assert!(omega(0).is_err());
    }

    #[test]
    fn heawood_is_cubic_bipartite() {
        let h = heawood();
        assert_eq!(h.n(), 14);
        assert!(h.is_cubic());
        assert!(h.two_coloring().is_some());
        assert_eq!(h.girth(), Some(6));
    }

    #[test]
    fn ten_vertex_mixed_graph() {
        let g = two_triangles_one_diamond();
        assert_eq!(g.n(), 10);
        assert!(g.is_cubic() && g.is_connected());
    }
}
