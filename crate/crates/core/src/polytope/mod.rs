//! Labelled momentum polytopes.
//!
//! A polytope is given by facet data `{x : <u_i, x> + c_i >= 0}` with
//! primitive integer inward normals, rational offsets, and positive integer
//! labels scaling the boundary measure of each facet by `1/label`. Vertices
//! are enumerated exactly; interior (Lebesgue) and boundary (lattice-
//! normalized, `dx = dsigma ^ dl_i`) integration run either exactly on
//! polynomials or by Gauss quadrature over a simplex decomposition.

pub mod integrate;
pub mod polynomial;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{
    det_exact, factorial, kernel_vector, parse_rat, rank_exact, rat, to_f64, Rat,
};
use integrate::QuadGrid;
use polynomial::Polynomial;

/// An affine function l(x) = <gradient, x> + constant on moment coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineFunction {
    #[serde(rename = "xi")]
    pub gradient: Vec<f64>,
    #[serde(rename = "c")]
    pub constant: f64,
}

impl AffineFunction {
    pub fn new(gradient: Vec<f64>, constant: f64) -> Self {
        AffineFunction { gradient, constant }
    }

    /// The constant function on an r-dimensional polytope.
    pub fn constant_fn(dim: usize, value: f64) -> Self {
        AffineFunction {
            gradient: vec![0.0; dim],
            constant: value,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::constant_fn(dim, 0.0)
    }

    pub fn dim(&self) -> usize {
        self.gradient.len()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.gradient.len());
        self.gradient
            .iter()
            .zip(x)
            .map(|(g, xi)| g * xi)
            .sum::<f64>()
            + self.constant
    }

    pub fn scale(&self, factor: f64) -> Self {
        AffineFunction {
            gradient: self.gradient.iter().map(|g| g * factor).collect(),
            constant: self.constant * factor,
        }
    }

    pub fn add(&self, other: &AffineFunction) -> Self {
        AffineFunction {
            gradient: self
                .gradient
                .iter()
                .zip(&other.gradient)
                .map(|(a, b)| a + b)
                .collect(),
            constant: self.constant + other.constant,
        }
    }

    pub fn sub(&self, other: &AffineFunction) -> Self {
        self.add(&other.scale(-1.0))
    }
}

/// One facet inequality `<normal, x> + offset >= 0` with an orbifold label.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: Rat,
    pub label: u32,
}

impl Facet {
    pub fn new(normal: Vec<i64>, offset: Rat) -> Self {
        Facet {
            normal,
            offset,
            label: 1,
        }
    }

    pub fn with_label(normal: Vec<i64>, offset: Rat, label: u32) -> Self {
        Facet {
            normal,
            offset,
            label,
        }
    }

    fn eval_rat(&self, x: &[Rat]) -> Rat {
        let mut acc = self.offset.clone();
        for (n, xi) in self.normal.iter().zip(x) {
            acc += rat(*n) * xi;
        }
        acc
    }
}

/// A vertex together with the facets active there.
#[derive(Debug, Clone)]
pub struct Vertex {
    pub point: Vec<Rat>,
    pub active: Vec<usize>,
}

/// Compact convex polytope with exact vertex data and cached simplex
/// decompositions of the interior and of every facet.
#[derive(Debug, Clone)]
pub struct LabelledPolytope {
    dim: usize,
    facets: Vec<Facet>,
    vertices: Vec<Vertex>,
    vertices_f64: Vec<Vec<f64>>,
    interior_simplices: Vec<Vec<usize>>,
    interior_volumes: Vec<Rat>,
    facet_simplices: Vec<Vec<Vec<usize>>>,
    facet_simplex_measures: Vec<Vec<Rat>>,
    volume: Rat,
    boundary: Rat,
    first_moments: Vec<Rat>,
    second_moments: Vec<Vec<Rat>>,
    boundary_first_moments: Vec<Rat>,
    grids: Arc<Mutex<BTreeMap<usize, Arc<QuadGrid>>>>,
}

impl LabelledPolytope {
    /// Validates facet data, enumerates vertices, triangulates, and caches
    /// all degree-two moments exactly.
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput(
                "polytope dimension must be >= 1".into(),
            ));
        }
        if facets.len() < dim + 1 {
            return Err(Error::InvalidInput(format!(
                "need at least {} facets in dimension {}, got {}",
                dim + 1,
                dim,
                facets.len()
            )));
        }
        for (i, f) in facets.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "facet {i}: normal has length {} but dim = {dim}",
                    f.normal.len()
                )));
            }
            if f.label == 0 {
                return Err(Error::InvalidInput(format!(
                    "facet {i}: label must be a positive integer"
                )));
            }
            let gcd = f.normal.iter().fold(0i64, |acc, &n| acc.gcd(&n));
            if gcd != 1 {
                return Err(Error::NonPrimitiveNormal {
                    facet: i,
                    normal: f.normal.clone(),
                    gcd,
                });
            }
            for (j, g) in facets.iter().enumerate().take(i) {
                if g.normal == f.normal && g.offset == f.offset {
                    return Err(Error::InvalidInput(format!(
                        "facets {j} and {i} are identical"
                    )));
                }
            }
        }

        check_bounded(dim, &facets)?;
        let vertices = enumerate_vertices(dim, &facets)?;
        if vertices.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        for (i, _) in facets.iter().enumerate() {
            let count = vertices.iter().filter(|v| v.active.contains(&i)).count();
            if count < dim {
                return Err(Error::RedundantFacet { facet: i });
            }
        }

        // Nonempty interior: the vertex barycenter must be strictly feasible.
        let nv = rat(vertices.len() as i64);
        let centroid: Vec<Rat> = (0..dim)
            .map(|j| {
                vertices
                    .iter()
                    .fold(Rat::zero(), |acc, v| acc + &v.point[j])
                    / &nv
            })
            .collect();
        for (i, f) in facets.iter().enumerate() {
            if f.eval_rat(&centroid) <= Rat::zero() {
                return Err(Error::InvalidInput(format!(
                    "polytope has empty interior (facet {i} is tight on all vertices)"
                )));
            }
        }

        let all_ids: Vec<usize> = (0..vertices.len()).collect();
        let interior_simplices = triangulate_face(&vertices, &all_ids, dim)?;
        let interior_volumes: Vec<Rat> = interior_simplices
            .iter()
            .map(|s| simplex_volume(&vertices, s, dim))
            .collect();

        let mut facet_simplices = Vec::with_capacity(facets.len());
        let mut facet_simplex_measures = Vec::with_capacity(facets.len());
        for (i, f) in facets.iter().enumerate() {
            let ids: Vec<usize> = (0..vertices.len())
                .filter(|&v| vertices[v].active.contains(&i))
                .collect();
            let simplices = triangulate_face(&vertices, &ids, dim - 1)?;
            let measures: Vec<Rat> = simplices
                .iter()
                .map(|s| facet_simplex_measure(&vertices, s, &f.normal, dim))
                .collect();
            facet_simplices.push(simplices);
            facet_simplex_measures.push(measures);
        }

        let mut poly = LabelledPolytope {
            dim,
            facets,
            vertices_f64: vertices
                .iter()
                .map(|v| v.point.iter().map(to_f64).collect())
                .collect(),
            vertices,
            interior_simplices,
            interior_volumes,
            facet_simplices,
            facet_simplex_measures,
            volume: Rat::zero(),
            boundary: Rat::zero(),
            first_moments: Vec::new(),
            second_moments: Vec::new(),
            boundary_first_moments: Vec::new(),
            grids: Arc::new(Mutex::new(BTreeMap::new())),
        };
        poly.volume = poly.interior_volumes.iter().sum();
        if poly.volume.is_zero() {
            return Err(Error::InvalidInput("polytope has zero volume".into()));
        }
        poly.boundary = (0..poly.facets.len())
            .map(|i| poly.facet_measure_exact(i))
            .sum();
        poly.first_moments = (0..dim)
            .map(|i| poly.integrate_interior_exact_raw(&Polynomial::coordinate(dim, i)))
            .collect();
        poly.second_moments = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let p = Polynomial::coordinate(dim, i).mul(&Polynomial::coordinate(dim, j));
                        poly.integrate_interior_exact_raw(&p)
                    })
                    .collect()
            })
            .collect();
        poly.boundary_first_moments = (0..dim)
            .map(|i| poly.integrate_boundary_exact_raw(&Polynomial::coordinate(dim, i)))
            .collect();
        Ok(poly)
    }

    /// Parses the polytope JSON format:
    /// `{ "dim": r, "facets": [ {"normal": [..], "offset": "p/q" | int, "label": int} ] }`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("polytope file is not valid JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::InvalidInput("polytope file must be a JSON object".into()))?;
        let dim = obj
            .get("dim")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| Error::InvalidInput("missing or non-integer \"dim\" field".into()))?
            as usize;
        let facets_val = obj
            .get("facets")
            .and_then(|f| f.as_array())
            .ok_or_else(|| Error::InvalidInput("missing \"facets\" array".into()))?;
        let mut facets = Vec::with_capacity(facets_val.len());
        for (i, fv) in facets_val.iter().enumerate() {
            let fo = fv
                .as_object()
                .ok_or_else(|| Error::InvalidInput(format!("facet {i} must be a JSON object")))?;
            let normal_val = fo.get("normal").and_then(|n| n.as_array()).ok_or_else(|| {
                Error::InvalidInput(format!("facet {i}: missing \"normal\" array"))
            })?;
            let normal: Vec<i64> = normal_val
                .iter()
                .map(|n| {
                    n.as_i64().ok_or_else(|| {
                        Error::InvalidInput(format!(
                            "facet {i}: normal entries must be integers, got {n}"
                        ))
                    })
                })
                .collect::<Result<_>>()?;
            let offset = match fo.get("offset") {
                Some(serde_json::Value::String(s)) => parse_rat(s)
                    .map_err(|e| Error::InvalidInput(format!("facet {i}: {e}")))?,
                Some(serde_json::Value::Number(n)) if n.is_i64() => rat(n.as_i64().unwrap()),
                Some(other) => {
                    return Err(Error::InvalidInput(format!(
                        "facet {i}: offset must be an integer or a rational string \"p/q\", got {other}"
                    )))
                }
                None => {
                    return Err(Error::InvalidInput(format!("facet {i}: missing \"offset\"")))
                }
            };
            let label = match fo.get("label") {
                None => 1,
                Some(l) => {
                    let l = l.as_u64().filter(|&l| l >= 1).ok_or_else(|| {
                        Error::InvalidInput(format!("facet {i}: label must be a positive integer"))
                    })?;
                    l as u32
                }
            };
            facets.push(Facet::with_label(normal, offset, label));
        }
        LabelledPolytope::new(dim, facets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Exact vertices in lexicographic order, each annotated with its active
    /// facet set.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_points_f64(&self) -> &[Vec<f64>] {
        &self.vertices_f64
    }

    pub fn volume_exact(&self) -> &Rat {
        &self.volume
    }

    pub fn volume(&self) -> f64 {
        to_f64(&self.volume)
    }

    /// Total lattice boundary measure, labels included.
    pub fn boundary_measure_exact(&self) -> &Rat {
        &self.boundary
    }

    pub fn boundary_measure(&self) -> f64 {
        to_f64(&self.boundary)
    }

    /// Label-weighted lattice measure of one facet.
    pub fn facet_measure_exact(&self, facet: usize) -> Rat {
        let raw: Rat = self.facet_simplex_measures[facet].iter().sum();
        raw / rat(self.facets[facet].label as i64)
    }

    pub fn first_moment_exact(&self, i: usize) -> &Rat {
        &self.first_moments[i]
    }

    pub fn second_moment_exact(&self, i: usize, j: usize) -> &Rat {
        &self.second_moments[i][j]
    }

    pub fn boundary_first_moment_exact(&self, i: usize) -> &Rat {
        &self.boundary_first_moments[i]
    }

    pub fn barycenter(&self) -> Vec<f64> {
        self.first_moments
            .iter()
            .map(|m| to_f64(&(m / &self.volume)))
            .collect()
    }

    /// True when the normals at every vertex form a lattice basis.
    pub fn is_delzant(&self) -> bool {
        self.vertices.iter().all(|v| {
            let mat: Vec<Vec<Rat>> = v
                .active
                .iter()
                .map(|&i| self.facets[i].normal.iter().map(|&n| rat(n)).collect())
                .collect();
            let d = det_exact(&mat);
            d == rat(1) || d == rat(-1)
        })
    }

    /// Image polytope A P + b for a unimodular integer matrix A.
    ///
    /// Normals map by the inverse transpose; offsets follow so that the image
    /// of every point of P is feasible.
    pub fn transform_unimodular(&self, a: &[Vec<i64>], b: &[i64]) -> Result<Self> {
        let r = self.dim;
        if a.len() != r || a.iter().any(|row| row.len() != r) || b.len() != r {
            return Err(Error::InvalidInput("transform has wrong dimensions".into()));
        }
        let a_rat: Vec<Vec<Rat>> = a
            .iter()
            .map(|row| row.iter().map(|&x| rat(x)).collect())
            .collect();
        let det = det_exact(&a_rat);
        if det != rat(1) && det != rat(-1) {
            return Err(Error::InvalidInput(format!(
                "matrix is not unimodular (det {det})"
            )));
        }
        let facets: Vec<Facet> = self
            .facets
            .iter()
            .map(|f| {
                // Solve A^T u' = u for u'.
                let at: Vec<Vec<Rat>> = (0..r)
                    .map(|i| (0..r).map(|j| a_rat[j][i].clone()).collect())
                    .collect();
                let rhs: Vec<Rat> = f.normal.iter().map(|&n| rat(n)).collect();
                let sol = crate::rational::solve_exact(&at, &rhs).expect("unimodular inverse");
                let normal: Vec<i64> = sol
                    .iter()
                    .map(|x| {
                        debug_assert!(x.is_integer());
                        let big = x.to_integer();
                        i64::try_from(&big).expect("normal entry out of i64 range")
                    })
                    .collect();
                let mut offset = f.offset.clone();
                for (n, &bi) in normal.iter().zip(b) {
                    offset -= rat(*n) * rat(bi);
                }
                Facet::with_label(normal, offset, f.label)
            })
            .collect();
        LabelledPolytope::new(r, facets)
    }

    pub(crate) fn interior_simplices(&self) -> &[Vec<usize>] {
        &self.interior_simplices
    }

    pub(crate) fn interior_volumes(&self) -> &[Rat] {
        &self.interior_volumes
    }

    pub(crate) fn facet_simplices(&self) -> &[Vec<Vec<usize>>] {
        &self.facet_simplices
    }

    pub(crate) fn facet_simplex_measures(&self) -> &[Vec<Rat>] {
        &self.facet_simplex_measures
    }

    pub(crate) fn grid(&self, points_per_axis: usize) -> Arc<QuadGrid> {
        let mut guard = self.grids.lock().expect("grid cache poisoned");
        guard
            .entry(points_per_axis)
            .or_insert_with(|| Arc::new(integrate::build_grid(self, points_per_axis)))
            .clone()
    }

    fn simplex_points(&self, ids: &[usize]) -> Vec<Vec<Rat>> {
        ids.iter()
            .map(|&v| self.vertices[v].point.clone())
            .collect()
    }

    pub(crate) fn integrate_interior_exact_raw(&self, poly: &Polynomial) -> Rat {
        self.interior_simplices
            .iter()
            .zip(&self.interior_volumes)
            .map(|(s, vol)| simplex_integral_exact(&self.simplex_points(s), vol, poly))
            .sum()
    }

    pub(crate) fn integrate_boundary_exact_raw(&self, poly: &Polynomial) -> Rat {
        let mut acc = Rat::zero();
        for (i, f) in self.facets.iter().enumerate() {
            let mut facet_acc = Rat::zero();
            for (s, m) in self.facet_simplices[i]
                .iter()
                .zip(&self.facet_simplex_measures[i])
            {
                facet_acc += simplex_integral_exact(&self.simplex_points(s), m, poly);
            }
            acc += facet_acc / rat(f.label as i64);
        }
        acc
    }
}

/// Exact min and max of an affine function over the polytope, attained at
/// vertices.
pub fn affine_range(p: &LabelledPolytope, ell: &AffineFunction) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in p.vertex_points_f64() {
        let val = ell.eval(v);
        lo = lo.min(val);
        hi = hi.max(val);
    }
    (lo, hi)
}

/// Mean scalar curvature 2 sigma(dP) / vol(P).
pub fn mean_scalar(p: &LabelledPolytope) -> f64 {
    to_f64(&mean_scalar_exact(p))
}

/// Exact rational mean scalar curvature.
pub fn mean_scalar_exact(p: &LabelledPolytope) -> Rat {
    rat(2) * p.boundary_measure_exact() / p.volume_exact()
}

fn check_bounded(dim: usize, facets: &[Facet]) -> Result<()> {
    let normals: Vec<Vec<Rat>> = facets
        .iter()
        .map(|f| f.normal.iter().map(|&n| rat(n)).collect())
        .collect();
    if rank_exact(&normals) < dim {
        let d = kernel_vector(&normals, dim).expect("rank-deficient matrix has a kernel");
        return Err(Error::UnboundedPolytope {
            direction: bigints_to_i64(&d),
        });
    }
    // The recession cone is pointed; a nonzero element would lie on an
    // extreme ray tight on dim-1 independent normals.
    for subset in combinations(facets.len(), dim - 1) {
        let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| normals[i].clone()).collect();
        if rank_exact(&rows) + 1 != dim {
            continue;
        }
        let Some(d) = kernel_vector(&rows, dim) else {
            continue;
        };
        for dir in [d.clone(), d.iter().map(|x| -x).collect::<Vec<BigInt>>()] {
            let inside = facets.iter().all(|f| {
                let dot: BigInt = f
                    .normal
                    .iter()
                    .zip(&dir)
                    .map(|(&n, di)| BigInt::from(n) * di)
                    .sum();
                dot >= BigInt::zero()
            });
            if inside {
                return Err(Error::UnboundedPolytope {
                    direction: bigints_to_i64(&dir),
                });
            }
        }
    }
    Ok(())
}

fn bigints_to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter()
        .map(|x| i64::try_from(x).unwrap_or(if x.is_negative() { i64::MIN } else { i64::MAX }))
        .collect()
}

fn enumerate_vertices(dim: usize, facets: &[Facet]) -> Result<Vec<Vertex>> {
    let mut found: BTreeMap<Vec<Rat>, Vec<usize>> = BTreeMap::new();
    for subset in combinations(facets.len(), dim) {
        let mat: Vec<Vec<Rat>> = subset
            .iter()
            .map(|&i| facets[i].normal.iter().map(|&n| rat(n)).collect())
            .collect();
        let rhs: Vec<Rat> = subset.iter().map(|&i| -facets[i].offset.clone()).collect();
        let Some(point) = crate::rational::solve_exact(&mat, &rhs) else {
            continue;
        };
        if facets.iter().any(|f| f.eval_rat(&point) < Rat::zero()) {
            continue;
        }
        let active: Vec<usize> = facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.eval_rat(&point).is_zero())
            .map(|(i, _)| i)
            .collect();
        if active.len() > dim {
            return Err(Error::DegenerateFacetIntersection {
                point: format!(
                    "({})",
                    point
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
                facets: active,
            });
        }
        found.entry(point).or_insert(active);
    }
    Ok(found
        .into_iter()
        .map(|(point, active)| Vertex { point, active })
        .collect())
}

/// All k-subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn affine_rank(vertices: &[Vertex], ids: &[usize]) -> usize {
    if ids.len() <= 1 {
        return 0;
    }
    let base = &vertices[ids[0]].point;
    let rows: Vec<Vec<Rat>> = ids[1..]
        .iter()
        .map(|&v| {
            vertices[v]
                .point
                .iter()
                .zip(base)
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    rank_exact(&rows)
}

/// Triangulates a d-dimensional face (given by its vertex ids, ascending) by
/// coning its first vertex over the subfaces that avoid it.
fn triangulate_face(vertices: &[Vertex], ids: &[usize], d: usize) -> Result<Vec<Vec<usize>>> {
    if ids.len() < d + 1 {
        return Err(Error::InvalidInput(format!(
            "face with {} vertices cannot have dimension {d}",
            ids.len()
        )));
    }
    if ids.len() == d + 1 {
        return Ok(vec![ids.to_vec()]);
    }
    let v0 = ids[0];
    let mut common: BTreeSet<usize> = vertices[ids[0]].active.iter().copied().collect();
    for &v in &ids[1..] {
        let act: BTreeSet<usize> = vertices[v].active.iter().copied().collect();
        common = common.intersection(&act).copied().collect();
    }
    let nfacets = vertices
        .iter()
        .flat_map(|v| v.active.iter().copied())
        .max()
        .unwrap_or(0)
        + 1;
    let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for j in 0..nfacets {
        if common.contains(&j) {
            continue;
        }
        let w: Vec<usize> = ids
            .iter()
            .copied()
            .filter(|&v| vertices[v].active.contains(&j))
            .collect();
        if w.len() < d || w.contains(&v0) {
            continue;
        }
        if affine_rank(vertices, &w) != d - 1 {
            continue;
        }
        subfaces.insert(w);
    }
    let mut out = Vec::new();
    for w in subfaces {
        for sub in triangulate_face(vertices, &w, d - 1)? {
            let mut s = Vec::with_capacity(d + 1);
            s.push(v0);
            s.extend(sub);
            out.push(s);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidInput(
            "triangulation failed (non-simple face structure)".into(),
        ));
    }
    Ok(out)
}

fn simplex_volume(vertices: &[Vertex], ids: &[usize], dim: usize) -> Rat {
    let base = &vertices[ids[0]].point;
    let rows: Vec<Vec<Rat>> = ids[1..]
        .iter()
        .map(|&v| {
            vertices[v]
                .point
                .iter()
                .zip(base)
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    let det = det_exact(&rows);
    crate::rational::rat_abs(&det) / Rat::from_integer(factorial(dim))
}

/// Lattice boundary measure of a facet simplex: |det[edges, normal]|
/// divided by (d! * |normal|^2) where d = dim - 1.
fn facet_simplex_measure(vertices: &[Vertex], ids: &[usize], normal: &[i64], dim: usize) -> Rat {
    let base = &vertices[ids[0]].point;
    let mut rows: Vec<Vec<Rat>> = ids[1..]
        .iter()
        .map(|&v| {
            vertices[v]
                .point
                .iter()
                .zip(base)
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    rows.push(normal.iter().map(|&n| rat(n)).collect());
    let det = det_exact(&rows);
    let norm_sq: i64 = normal.iter().map(|&n| n * n).sum();
    crate::rational::rat_abs(&det) / (Rat::from_integer(factorial(dim - 1)) * rat(norm_sq))
}

/// Exact integral of a polynomial over one simplex carrying the given
/// measure, via the barycentric monomial formula
/// `int lambda^k = measure * d! * prod(k_i!) / (d + |k|)!`.
fn simplex_integral_exact(points: &[Vec<Rat>], measure: &Rat, poly: &Polynomial) -> Rat {
    let d = points.len() - 1;
    let ambient = poly.dim();
    let forms: Vec<Polynomial> = (0..ambient)
        .map(|j| {
            let coeffs: Vec<Rat> = points.iter().map(|p| p[j].clone()).collect();
            Polynomial::affine(&coeffs, Rat::zero())
        })
        .collect();
    let lam = poly.substitute(&forms);
    let d_fact = Rat::from_integer(factorial(d));
    let mut acc = Rat::zero();
    for (exps, coeff) in lam.terms() {
        let total: u32 = exps.iter().sum();
        let mut num = d_fact.clone();
        for &e in exps {
            num *= Rat::from_integer(factorial(e as usize));
        }
        let den = Rat::from_integer(factorial(d + total as usize));
        acc += coeff * measure * num / den;
    }
    acc
}
