use crate::error::{Error, Result};

/// A finite quiver without oriented cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_labels: Vec<String>,
    arrows: Vec<(usize, usize)>,
    arrow_labels: Vec<String>,
    topo: Vec<usize>,
}

impl Quiver {
    /// Vertices are labelled `1..=n`, arrows `a1, a2, ...`.
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let vertex_labels = (1..=vertex_count).map(|i| i.to_string()).collect();
        let arrow_labels = (1..=arrows.len()).map(|i| format!("a{i}")).collect();
        Quiver::with_labels(vertex_labels, arrows, arrow_labels)
    }

    pub fn with_labels(
        vertex_labels: Vec<String>,
        arrows: Vec<(usize, usize)>,
        arrow_labels: Vec<String>,
    ) -> Result<Self> {
        let n = vertex_labels.len();
        if arrow_labels.len() != arrows.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} arrows but {} arrow labels",
                arrows.len(),
                arrow_labels.len()
            )));
        }
        for &(s, t) in &arrows {
            if s >= n {
                return Err(Error::VertexOutOfRange(s));
            }
            if t >= n {
                return Err(Error::VertexOutOfRange(t));
            }
        }
        // Kahn's algorithm; smallest available vertex first
        let mut indeg = vec![0usize; n];
        for &(_, t) in &arrows {
            indeg[t] += 1;
        }
        let mut topo = Vec::with_capacity(n);
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = ready.pop_first() {
            topo.push(v);
            for &(s, t) in &arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.insert(t);
                    }
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n).find(|v| !topo.contains(v)).unwrap_or(0);
            return Err(Error::CyclicQuiver(stuck));
        }
        Ok(Quiver {
            vertex_labels,
            arrows,
            arrow_labels,
            topo,
        })
    }

    /// `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Self {
        Quiver::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("linear quiver is acyclic")
    }

    /// Two arrows `1 => 2`.
    pub fn kronecker() -> Self {
        Quiver::new(2, vec![(0, 1), (0, 1)]).expect("Kronecker quiver is acyclic")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> (usize, usize) {
        self.arrows[a]
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertex_labels[v]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn arrow_label(&self, a: usize) -> &str {
        &self.arrow_labels[a]
    }

    pub fn arrow_labels(&self) -> &[String] {
        &self.arrow_labels
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertex_labels.iter().position(|l| l == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrow_labels.iter().position(|l| l == label)
    }

    /// Vertices ordered so that every arrow points forward.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].1 == v)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].0 == v)
    }

    /// All paths starting at `v`, as arrow sequences, shortest first. The
    /// trivial path is the empty sequence.
    pub fn paths_from(&self, v: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut frontier: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), v)];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (path, end) in frontier {
                for a in self.arrows_from(end) {
                    let mut p = path.clone();
                    p.push(a);
                    out.push(p.clone());
                    next.push((p, self.arrows[a].1));
                }
            }
            frontier = next;
        }
        out
    }

    pub fn path_end(&self, start: usize, path: &[usize]) -> usize {
        path.last().map_or(start, |&a| self.arrows[a].1)
    }

    /// Number of paths `v ~> w`, including the trivial one when `v == w`.
    pub fn path_count(&self, v: usize, w: usize) -> usize {
        self.paths_from(v).iter().filter(|p| self.path_end(v, p) == w).count()
    }

    /// Dimension of the path algebra.
    pub fn path_algebra_dim(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.paths_from(v).len()).sum()
    }
}

/// `<d, e> = sum_v d_v e_v - sum_{a: i -> j} d_i e_j`.
pub fn euler_form(q: &Quiver, d: &[i64], e: &[i64]) -> Result<i64> {
    let n = q.vertex_count();
    if d.len() != n || e.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "dimension vectors of length {} and {} on a quiver with {n} vertices",
            d.len(),
            e.len()
        )));
    }
    let diag: i64 = d.iter().zip(e).map(|(x, y)| x * y).sum();
    let off: i64 = q.arrows().iter().map(|&(i, j)| d[i] * e[j]).sum();
    Ok(diag - off)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_cycles_and_bad_vertices() {
        assert!(matches!(
            Quiver::new(2, vec![(0, 1), (1, 0)]),
            Err(Error::CyclicQuiver(_))
        ));
        assert!(matches!(Quiver::new(1, vec![(0, 0)]), Err(Error::CyclicQuiver(0))));
        assert!(matches!(Quiver::new(2, vec![(0, 2)]), Err(Error::VertexOutOfRange(2))));
    }

    #[test]
    fn topological_order_respects_arrows() {
        let q = Quiver::new(4, vec![(3, 1), (1, 0), (2, 0)]).unwrap();
        let pos = |v: usize| q.topological_order().iter().position(|&x| x == v).unwrap();
        for &(s, t) in q.arrows() {
            assert!(pos(s) < pos(t));
        }
    }

    #[test]
    fn path_counts() {
        let a3 = Quiver::linear(3);
        assert_eq!(a3.path_count(0, 2), 1);
        assert_eq!(a3.path_count(2, 0), 0);
        assert_eq!(a3.path_algebra_dim(), 6);
        let k = Quiver::kronecker();
        assert_eq!(k.path_count(0, 1), 2);
        assert_eq!(k.path_algebra_dim(), 4);
    }

    #[test]
    fn euler_form_examples() {
        let a2 = Quiver::linear(2);
        assert_eq!(euler_form(&a2, &[3, 1], &[0, 0]).unwrap(), 0);
        assert_eq!(euler_form(&a2, &[1, 0], &[0, 1]).unwrap(), -1);
        assert_eq!(euler_form(&Quiver::kronecker(), &[1, 1], &[1, 1]).unwrap(), 0);
        assert!(euler_form(&a2, &[1], &[1, 1]).is_err());
    }
}
