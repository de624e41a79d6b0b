//! Deterministic sample generation for the acceptance checks.
//!
//! Everything is seeded; the same seed always yields the same points.
//! Samples are clamped away from chart boundaries: radius in [0.5, 3] for
//! the punctured chart, all other coordinates in [-2, 2].

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::CaseId;
use crate::coordgeom::models::Point;
use crate::error::{Error, Result};

/// Default seed for every seeded check in the crate.
pub const DEFAULT_SEED: u64 = u64::from_be_bytes(*b"hyperlie");

fn rng_for(id: CaseId, seed: u64, stream: u64) -> ChaCha8Rng {
    let case_index = match id {
        CaseId::Abelian => 0u64,
        CaseId::Case1 => 1,
        CaseId::Case2 => 2,
        CaseId::Case3 => 3,
        CaseId::Case4 => 4,
    };
    ChaCha8Rng::seed_from_u64(seed ^ (case_index << 32) ^ stream.wrapping_mul(0x9e37_79b9))
}

fn sample_point(id: CaseId, rng: &mut ChaCha8Rng) -> Point {
    match id {
        CaseId::Case1 => loop {
            let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm < 0.3 {
                continue;
            }
            let radius = rng.random_range(0.5..3.0);
            return std::array::from_fn(|i| v[i] / norm * radius);
        },
        _ => std::array::from_fn(|_| rng.random_range(-2.0..2.0)),
    }
}

/// Seeded interior points of a chart.
pub fn seeded_points(id: CaseId, count: usize, seed: u64) -> Result<Vec<Point>> {
    if id == CaseId::Abelian {
        return Err(Error::NoCoordinateModel(id.to_string()));
    }
    let mut rng = rng_for(id, seed, 1);
    Ok((0..count).map(|_| sample_point(id, &mut rng)).collect())
}

/// Seeded point pairs (for left-invariance checks).
pub fn seeded_pairs(id: CaseId, count: usize, seed: u64) -> Result<Vec<(Point, Point)>> {
    if id == CaseId::Abelian {
        return Err(Error::NoCoordinateModel(id.to_string()));
    }
    let mut rng = rng_for(id, seed, 2);
    Ok((0..count)
        .map(|_| (sample_point(id, &mut rng), sample_point(id, &mut rng)))
        .collect())
}

/// Seeded point triples (for associativity checks).
pub fn seeded_triples(id: CaseId, count: usize, seed: u64) -> Result<Vec<(Point, Point, Point)>> {
    if id == CaseId::Abelian {
        return Err(Error::NoCoordinateModel(id.to_string()));
    }
    let mut rng = rng_for(id, seed, 3);
    Ok((0..count)
        .map(|_| {
            (
                sample_point(id, &mut rng),
                sample_point(id, &mut rng),
                sample_point(id, &mut rng),
            )
        })
        .collect())
}

/// Seeded vector pairs spanning planes; rejection keeps the pairs away
/// from euclidean degeneracy so metric orthonormalization stays stable.
pub fn seeded_planes(count: usize, seed: u64) -> Vec<([f64; 4], [f64; 4])> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x706c_616e)); // "plan"
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let u: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let nu = u.iter().map(|c| c * c).sum::<f64>().sqrt();
        let nv = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if nu < 0.3 || nv < 0.3 {
            continue;
        }
        let dot: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
        if (dot / (nu * nv)).abs() > 0.99 {
            continue;
        }
        out.push((u, v));
    }
    out
}
