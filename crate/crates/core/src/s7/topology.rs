//! Finite simplicial complexes and their Euler characteristic.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A finite abstract simplicial complex. Simplices are stored as sorted vertex
/// lists, grouped by dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<BTreeSet<Vec<usize>>>,
}

fn normalize(s: &[usize]) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Err(Error::MalformedComplex("empty simplex".into()));
    }
    let mut v = s.to_vec();
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::MalformedComplex(format!(
            "repeated vertex in simplex {s:?}"
        )));
    }
    Ok(v)
}

fn faces(s: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..s.len()).filter(move |_| s.len() > 1).map(move |k| {
        let mut f = s.to_vec();
        f.remove(k);
        f
    })
}

impl SimplicialComplex {
    /// The complex generated by `facets` and all their faces.
    pub fn from_facets<S: AsRef<[usize]>>(facets: &[S]) -> Result<Self> {
        let mut simplices: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        let mut stack: Vec<Vec<usize>> = facets
            .iter()
            .map(|f| normalize(f.as_ref()))
            .collect::<Result<_>>()?;
        while let Some(s) = stack.pop() {
            let d = s.len() - 1;
            if simplices.len() <= d {
                simplices.resize_with(d + 1, BTreeSet::new);
            }
            if simplices[d].insert(s.clone()) {
                stack.extend(faces(&s));
            }
        }
        Ok(Self { simplices })
    }

    /// A complex from an explicit list of all its simplices; every face of a
    /// listed simplex must be listed too.
    pub fn from_simplices<S: AsRef<[usize]>>(all: &[S]) -> Result<Self> {
        let mut simplices: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for s in all {
            let s = normalize(s.as_ref())?;
            let d = s.len() - 1;
            if simplices.len() <= d {
                simplices.resize_with(d + 1, BTreeSet::new);
            }
            simplices[d].insert(s);
        }
        for (d, layer) in simplices.iter().enumerate().skip(1) {
            for s in layer {
                if let Some(f) = faces(s).find(|f| !simplices[d - 1].contains(f)) {
                    return Err(Error::MalformedComplex(format!(
                        "face {f:?} of simplex {s:?} is missing"
                    )));
                }
            }
        }
        Ok(Self { simplices })
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().rposition(|l| !l.is_empty())
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(BTreeSet::len).collect()
    }

    pub fn simplices(&self, dim: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.get(dim).into_iter().flatten()
    }

    /// `euler_characteristic`: the alternating sum of simplex counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    fn facets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (d, layer) in self.simplices.iter().enumerate() {
            for s in layer {
                let covered = self.simplices.get(d + 1).is_some_and(|up| {
                    up.iter().any(|t| s.iter().all(|v| t.binary_search(v).is_ok()))
                });
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    fn vertex_bound(&self) -> usize {
        self.simplices(0).map(|v| v[0] + 1).max().unwrap_or(0)
    }

    /// Triangulation of the product of the two polyhedra: each product of
    /// simplices is cut into the staircase simplices of its vertex grid.
    /// Vertex `(a, b)` becomes `a * n + b`, where `n` bounds the vertex
    /// indices of `other`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let n = other.vertex_bound();
        let mut facets = Vec::new();
        for s in self.facets() {
            for t in other.facets() {
                staircases(&s, &t, n, &mut facets);
            }
        }
        Self::from_facets(&facets)
    }

    /// Boundary of the octahedron, a 2-sphere.
    pub fn octahedron() -> Self {
        let mut facets = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        Self::from_facets(&facets).expect("octahedron is well formed")
    }

    /// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
    pub fn seven_vertex_torus() -> Self {
        let mut facets = Vec::new();
        for i in 0..7 {
            facets.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            facets.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        Self::from_facets(&facets).expect("torus is well formed")
    }

    /// Boundary of a triangle, a circle.
    pub fn circle() -> Self {
        Self::from_facets(&[[0, 1], [1, 2], [0, 2]]).expect("circle is well formed")
    }

    /// Parses one facet per line, vertices separated by whitespace or commas.
    /// Blank lines and text after `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut facets = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let facet = content
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>().map_err(|e| Error::Parse {
                        line: k + 1,
                        message: format!("bad vertex `{t}`: {e}"),
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            if facet.len() > 10 {
                return Err(Error::Parse {
                    line: k + 1,
                    message: "simplices are limited to 10 vertices".into(),
                });
            }
            if facet.iter().any(|&v| v > 1 << 20) {
                return Err(Error::Parse {
                    line: k + 1,
                    message: "vertex index too large".into(),
                });
            }
            facets.push(facet);
        }
        Self::from_facets(&facets)
    }

    /// Inverse of [`SimplicialComplex::parse`], listing facets.
    pub fn to_text(&self) -> String {
        self.facets()
            .iter()
            .map(|f| f.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n")
            .collect()
    }
}

/// Appends the staircase simplices of `s x t`: monotone lattice paths from
/// `(0, 0)` to `(|s|-1, |t|-1)`.
fn staircases(s: &[usize], t: &[usize], n: usize, out: &mut Vec<Vec<usize>>) {
    fn walk(
        s: &[usize],
        t: &[usize],
        n: usize,
        i: usize,
        j: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        path.push(s[i] * n + t[j]);
        if i + 1 == s.len() && j + 1 == t.len() {
            out.push(path.clone());
        }
        if i + 1 < s.len() {
            walk(s, t, n, i + 1, j, path, out);
        }
        if j + 1 < t.len() {
            walk(s, t, n, i, j + 1, path, out);
        }
        path.pop();
    }
    let mut path = Vec::with_capacity(s.len() + t.len());
    walk(s, t, n, 0, 0, &mut path, out);
}
