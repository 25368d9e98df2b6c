//! Random domains and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use nalgebra::DMatrix;
use polylap::lattice::Region;
use polylap::{AmbientGraph, FiniteGraph, LatticeDomain, LatticeVertex};
use rand::seq::SliceRandom;
use rand::Rng;

/// A connected lattice animal of `size` vertices grown from the origin.
pub fn connected_lattice<R: Rng>(rng: &mut R, d: usize, size: usize) -> LatticeDomain {
    let mut set = BTreeSet::from([vec![0i64; d]]);
    let mut list = vec![vec![0i64; d]];
    while set.len() < size {
        let mut v = list.choose(rng).unwrap().clone();
        let axis = rng.gen_range(0..d);
        v[axis] += if rng.gen_bool(0.5) { 1 } else { -1 };
        if set.insert(v.clone()) {
            list.push(v);
        }
    }
    LatticeDomain::from_vertices(d, list.into_iter().map(LatticeVertex).collect()).unwrap()
}

/// A nonempty random subset of the box [0, extent]^d.
pub fn random_subset<R: Rng>(rng: &mut R, d: usize, extent: i64, p: f64) -> LatticeDomain {
    let full = LatticeDomain::cube(d, extent).unwrap();
    let mut picked: Vec<LatticeVertex> = full.vertices().iter().filter(|_| rng.gen_bool(p)).cloned().collect();
    if picked.is_empty() {
        picked.push(full.vertices()[rng.gen_range(0..full.len())].clone());
    }
    LatticeDomain::from_vertices(d, picked).unwrap()
}

/// A nonempty random subset of `domain`.
pub fn random_sub_domain<R: Rng>(rng: &mut R, domain: &LatticeDomain, p: f64) -> LatticeDomain {
    let mut picked: Vec<LatticeVertex> = domain.vertices().iter().filter(|_| rng.gen_bool(p)).cloned().collect();
    if picked.is_empty() {
        picked.push(domain.vertices()[rng.gen_range(0..domain.len())].clone());
    }
    LatticeDomain::from_vertices(domain.dim(), picked).unwrap()
}

/// A connected random graph on `n` vertices with Ω a connected set of `m` of them.
pub fn connected_ambient<R: Rng>(rng: &mut R, n: usize, extra_edges: usize, m: usize) -> AmbientGraph {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for _ in 0..extra_edges {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let graph = FiniteGraph::from_edges(n, &edges).unwrap();
    // a breadth-first prefix is connected
    let start = rng.gen_range(0..n);
    let mut order = vec![start];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &(a, b) in &edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    order.truncate(m.min(n));
    AmbientGraph::new(graph, order).unwrap()
}

/// (2d·I − A)^l on the ℓ¹ neighbourhood of radius l, restricted to Ω.
///
/// Built from coordinates alone with nalgebra, sharing no code with assembly.
pub fn operator_oracle(domain: &LatticeDomain, order: usize) -> DMatrix<f64> {
    let d = domain.dim();
    let r = order as i64;
    let mut offsets = vec![vec![]];
    for _ in 0..d {
        offsets = offsets
            .into_iter()
            .flat_map(|o: Vec<i64>| (-r..=r).map(move |c| [o.clone(), vec![c]].concat()))
            .collect();
    }
    offsets.retain(|o| o.iter().map(|c| c.abs()).sum::<i64>() <= r);
    let mut big: BTreeSet<Vec<i64>> = BTreeSet::new();
    for v in domain.vertices() {
        for o in &offsets {
            big.insert(v.0.iter().zip(o).map(|(a, b)| a + b).collect());
        }
    }
    // Ω first, in domain order
    let mut pts: Vec<Vec<i64>> = domain.vertices().iter().map(|v| v.0.clone()).collect();
    pts.extend(big.into_iter().filter(|p| !domain.contains(&LatticeVertex(p.clone()))));
    let n = pts.len();
    let lap = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            2.0 * d as f64
        } else if pts[i].iter().zip(&pts[j]).map(|(a, b)| (a - b).abs()).sum::<i64>() == 1 {
            -1.0
        } else {
            0.0
        }
    });
    let mut power = DMatrix::identity(n, n);
    for _ in 0..order {
        power = &power * &lap;
    }
    power.view((0, 0), (domain.len(), domain.len())).into_owned()
}

pub fn to_nalgebra(m: &polylap::Matrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.n(), m.n(), |i, j| m[(i, j)])
}

/// Eigenvalues ascending by nalgebra's symmetric solver.
pub fn oracle_eigenvalues(m: &polylap::Matrix) -> Vec<f64> {
    let mut ev: Vec<f64> = nalgebra::SymmetricEigen::new(to_nalgebra(m)).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}
