//! Binomial edge ideals, the prime ideals `P_T(G)`, and minimal-prime
//! enumeration by the cut-set criterion.
//!
//! The ambient ring for a graph with labels `1..=N` is
//! `K[x_1, .., x_N, y_1, .., y_N]`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::exec::Execution;
use crate::graphs::Graph;

/// Largest vertex count for which [`minimal_primes`] enumerates subsets.
pub const MAX_PRIME_ENUMERATION_VERTICES: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    X(usize),
    Y(usize),
    /// `x_i y_j - x_j y_i` with `i < j`.
    Minor(usize, usize),
}

impl Generator {
    pub fn degree(&self) -> usize {
        match self {
            Generator::X(_) | Generator::Y(_) => 1,
            Generator::Minor(..) => 2,
        }
    }

    fn max_index(&self) -> usize {
        match *self {
            Generator::X(i) | Generator::Y(i) => i,
            Generator::Minor(_, j) => j,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::X(i) => write!(f, "x{i}"),
            Generator::Y(i) => write!(f, "y{i}"),
            Generator::Minor(i, j) => write!(f, "x{i}*y{j} - x{j}*y{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialIdeal {
    num_vertices: usize,
    generators: Vec<Generator>,
    pub label: String,
}

impl BinomialIdeal {
    /// Checks index ranges, drops repeated generators and keeps first-seen order.
    pub fn new(
        num_vertices: usize,
        generators: impl IntoIterator<Item = Generator>,
        label: impl Into<String>,
    ) -> Result<BinomialIdeal> {
        let mut seen = BTreeSet::new();
        let mut gens = Vec::new();
        for g in generators {
            let ok = match g {
                Generator::X(i) | Generator::Y(i) => i >= 1,
                Generator::Minor(i, j) => i >= 1 && i < j,
            };
            if !ok || g.max_index() > num_vertices {
                return invalid(format!("generator {g} is not valid in {num_vertices} vertices"));
            }
            if seen.insert(g) {
                gens.push(g);
            }
        }
        Ok(BinomialIdeal {
            num_vertices,
            generators: gens,
            label: label.into(),
        })
    }

    pub fn zero(num_vertices: usize) -> BinomialIdeal {
        BinomialIdeal {
            num_vertices,
            generators: Vec::new(),
            label: "0".into(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_variables(&self) -> usize {
        2 * self.num_vertices
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// The ideal generated by both generator lists.
    pub fn sum(&self, other: &BinomialIdeal) -> Result<BinomialIdeal> {
        if self.num_vertices != other.num_vertices {
            return invalid(format!(
                "ambient mismatch: {} vs {} vertices",
                self.num_vertices, other.num_vertices
            ));
        }
        BinomialIdeal::new(
            self.num_vertices,
            self.generators.iter().chain(&other.generators).copied(),
            format!("({}) + ({})", self.label, other.label),
        )
    }
}

impl fmt::Display for BinomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// One generator `x_i y_j - x_j y_i` per edge, in edge order.
pub fn edge_binomials(g: &Graph) -> BinomialIdeal {
    BinomialIdeal {
        num_vertices: g.label_bound(),
        generators: g.edges().iter().map(|&(i, j)| Generator::Minor(i, j)).collect(),
        label: "J_G".into(),
    }
}

/// All 2x2 minors of the 2 x k matrix with columns `(x_i, y_i)` for `i` in
/// `vertices`, in lexicographic `(i, j)` order.
pub fn minor_ideal(vertices: &[usize], num_vertices: usize) -> Result<BinomialIdeal> {
    if vertices.is_empty() {
        return invalid("minor ideal needs at least one column");
    }
    if vertices.windows(2).any(|w| w[0] >= w[1]) {
        return invalid(format!("column indices must increase strictly: {vertices:?}"));
    }
    if vertices[0] == 0 || *vertices.last().unwrap() > num_vertices {
        return invalid(format!("column indices {vertices:?} outside 1..={num_vertices}"));
    }
    Ok(BinomialIdeal {
        num_vertices,
        generators: minors_of(vertices).collect(),
        label: format!("I{vertices:?}"),
    })
}

fn minors_of(vertices: &[usize]) -> impl Iterator<Item = Generator> + '_ {
    vertices
        .iter()
        .enumerate()
        .flat_map(move |(k, &i)| vertices[k + 1..].iter().map(move |&j| Generator::Minor(i, j)))
}

/// The ideal `(x_i, y_i : i in vertices)`.
pub fn variable_ideal(vertices: &[usize], num_vertices: usize) -> Result<BinomialIdeal> {
    BinomialIdeal::new(
        num_vertices,
        vertices.iter().flat_map(|&i| [Generator::X(i), Generator::Y(i)]),
        format!("vars{vertices:?}"),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeComponent {
    pub cut_set: BTreeSet<usize>,
    pub components: Vec<BTreeSet<usize>>,
    pub height: usize,
    pub dim: usize,
}

/// `P_T(G)`: the variables of `T` together with the complete-graph minors of
/// every connected component of `G \ T`.
pub fn prime_component(g: &Graph, cut_set: &BTreeSet<usize>) -> Result<(PrimeComponent, BinomialIdeal)> {
    let rest = g.delete_vertices(cut_set)?;
    let components = rest.connected_components();
    let n = g.label_bound();
    let mut gens: Vec<Generator> = cut_set
        .iter()
        .flat_map(|&i| [Generator::X(i), Generator::Y(i)])
        .collect();
    for comp in &components {
        let cols: Vec<usize> = comp.iter().copied().collect();
        gens.extend(minors_of(&cols));
    }
    let height = g.num_vertices() - components.len() + cut_set.len();
    let prime = PrimeComponent {
        cut_set: cut_set.clone(),
        components,
        height,
        dim: 2 * n - height,
    };
    let ideal = BinomialIdeal {
        num_vertices: n,
        generators: gens,
        label: format!("P_{cut_set:?}"),
    };
    Ok((prime, ideal))
}

fn count_components(adj: &[u64], alive: u64) -> u32 {
    let mut rest = alive;
    let mut count = 0;
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        loop {
            let mut grown = comp;
            let mut bits = comp;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                grown |= adj[v];
                bits &= bits - 1;
            }
            grown &= alive;
            if grown == comp {
                break;
            }
            comp = grown;
        }
        rest &= !comp;
        count += 1;
    }
    count
}

/// Whether `cut` (a label bitmask) passes the cut-set criterion: empty, or
/// removing any single vertex from it lowers the component count.
fn is_minimal_cut(adj: &[u64], all: u64, cut: u64) -> bool {
    if cut == 0 {
        return true;
    }
    let c = count_components(adj, all & !cut);
    let mut bits = cut;
    while bits != 0 {
        let v = bits & bits.wrapping_neg();
        if count_components(adj, (all & !cut) | v) >= c {
            return false;
        }
        bits &= bits - 1;
    }
    true
}

/// Minimal primes of `J_G` for a connected graph, ordered by cut-set size and
/// then lexicographically.
pub fn minimal_primes(g: &Graph, exec: Execution) -> Result<Vec<PrimeComponent>> {
    if !g.is_connected() {
        return Err(Error::Unsupported(
            "minimal primes are only enumerated for connected graphs".into(),
        ));
    }
    let verts: Vec<usize> = g.vertices().iter().copied().collect();
    if verts.len() > MAX_PRIME_ENUMERATION_VERTICES {
        return Err(Error::Unsupported(format!(
            "subset enumeration is limited to {MAX_PRIME_ENUMERATION_VERTICES} vertices, graph has {}",
            verts.len()
        )));
    }
    let adj = g.adjacency_masks();
    let all: u64 = verts.iter().fold(0, |acc, v| acc | 1 << (v - 1));
    let to_labels = |k: u64| -> u64 {
        verts
            .iter()
            .enumerate()
            .filter(|(pos, _)| k >> pos & 1 == 1)
            .fold(0, |acc, (_, v)| acc | 1 << (v - 1))
    };
    let cuts = exec.filter_map_range(1u64 << verts.len(), |k| {
        let cut = to_labels(k);
        is_minimal_cut(&adj, all, cut).then_some(cut)
    });
    let mut sets: Vec<Vec<usize>> = cuts
        .into_iter()
        .map(|cut| verts.iter().copied().filter(|v| cut >> (v - 1) & 1 == 1).collect())
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.into_iter()
        .map(|t| prime_component(g, &t.into_iter().collect()).map(|(p, _)| p))
        .collect()
}

/// Generators of the prime listed in `p`.
pub fn prime_ideal(g: &Graph, p: &PrimeComponent) -> Result<BinomialIdeal> {
    prime_component(g, &p.cut_set).map(|(_, ideal)| ideal)
}

/// Krull dimension of `S/J_G` as the largest `dim S/P` over minimal primes.
pub fn krull_dim_from_primes(g: &Graph, exec: Execution) -> Result<usize> {
    Ok(minimal_primes(g, exec)?
        .iter()
        .map(|p| p.dim)
        .max()
        .unwrap_or(2 * g.label_bound()))
}
