//! Triangle/diamond detection and the vertex-type classification of cubic graphs.

use serde::Serialize;

use super::{Graph, GraphError};

/// Induced `K4 - e`. `tips` are the two non-adjacent vertices, `chord` the adjacent pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diamond {
    pub tips: [usize; 2],
    pub chord: [usize; 2],
}

impl Diamond {
    pub fn vertices(&self) -> [usize; 4] {
        let mut v = [self.tips[0], self.tips[1], self.chord[0], self.chord[1]];
        v.sort_unstable();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    /// Induced triangles not contained in any diamond.
    pub triangles: Vec<[usize; 3]>,
    pub diamonds: Vec<Diamond>,
    pub t1: usize,
    pub t2: usize,
    pub t3: usize,
    pub k1: usize,
    pub k2: usize,
}

/// Every `K3` in the graph, each as a sorted triple, in lexicographic order.
pub fn raw_triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > b) {
                if g.has_edge(a, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Every induced diamond, ordered by chord.
pub fn diamonds(g: &Graph) -> Vec<Diamond> {
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        let common: Vec<usize> = g
            .neighbors(a)
            .iter()
            .copied()
            .filter(|&c| g.has_edge(b, c))
            .collect();
        for i in 0..common.len() {
            for j in i + 1..common.len() {
                let (x, y) = (common[i], common[j]);
                if !g.has_edge(x, y) {
                    out.push(Diamond { tips: [x, y], chord: [a, b] });
                }
            }
        }
    }
    out
}

/// Classifies a cubic graph of order at least 6 by how many triangles each vertex lies in.
///
/// Fails with [`GraphError::RelationViolated`] if the counts break
/// `t1 = 2 k1`, `t2 = t1 + 3 k2`, which would mean a bug here, never a legitimate input.
pub fn classify_structure(g: &Graph) -> Result<StructureReport, GraphError> {
    if !g.is_cubic() {
        return Err(GraphError::NotCubic);
    }
    if g.n() < 6 {
        return Err(GraphError::InvalidParameter(format!(
            "structure classification needs n >= 6, got {}",
            g.n()
        )));
    }
    let raw = raw_triangles(g);
    let ds = diamonds(g);
    let in_diamond = |t: &[usize; 3]| {
        ds.iter().any(|d| t.iter().all(|v| d.vertices().contains(v)))
    };
    let triangles: Vec<[usize; 3]> = raw.iter().copied().filter(|t| !in_diamond(t)).collect();

    let mut count = vec![0usize; g.n()];
    for t in &raw {
        for &v in t {
            count[v] += 1;
        }
    }
    let t1 = count.iter().filter(|&&c| c == 2).count();
    let t2 = count.iter().filter(|&&c| c == 1).count();
    let t3 = count.iter().filter(|&&c| c == 0).count();
    if t1 + t2 + t3 != g.n() {
        return Err(GraphError::RelationViolated(format!(
            "a vertex lies in three triangles (t1={t1}, t2={t2}, t3={t3}, n={})",
            g.n()
        )));
    }
    if t1 % 2 != 0 || t2 < t1 || (t2 - t1) % 3 != 0 {
        return Err(GraphError::RelationViolated(format!("t1={t1}, t2={t2}")));
    }
    let report = StructureReport {
        k1: t1 / 2,
        k2: (t2 - t1) / 3,
        triangles,
        diamonds: ds,
        t1,
        t2,
        t3,
    };
    if report.k1 != report.diamonds.len() || report.k2 != report.triangles.len() {
        return Err(GraphError::RelationViolated(format!(
            "k1={} but {} diamonds, k2={} but {} triangles",
            report.k1,
            report.diamonds.len(),
            report.k2,
            report.triangles.len()
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, generalized_petersen, necklace, truncate, NecklaceKind};

    #[test]
    fn truncated_tetrahedron() {
        let r = classify_structure(&truncate(&complete(4)).unwrap()).unwrap();
        assert_eq!((r.t1, r.t2, r.t3, r.k1, r.k2), (0, 12, 0, 0, 4));
    }

    #[test]
    fn diamond_necklace_counts() {
        let r = classify_structure(&necklace(NecklaceKind::Diamond, 2).unwrap()).unwrap();
        // Chord vertices lie in two triangles, tips in one.
        assert_eq!((r.t1, r.t2, r.t3, r.k1, r.k2), (4, 4, 0, 2, 0));
        assert!(r.triangles.is_empty());
        let g = necklace(NecklaceKind::Diamond, 2).unwrap();
        for d in &r.diamonds {
            assert!(g.has_edge(d.chord[0], d.chord[1]));
            assert!(!g.has_edge(d.tips[0], d.tips[1]));
        }
    }

    #[test]
    fn petersen_has_no_triangles() {
        let r = classify_structure(&generalized_petersen(5, 2).unwrap()).unwrap();
        assert_eq!((r.t1, r.t2, r.t3), (0, 0, 10));
    }

    #[test]
    fn rejects_non_cubic() {
        assert_eq!(classify_structure(&complete(5)), Err(GraphError::NotCubic));
    }
}
