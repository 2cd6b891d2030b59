//! Benchmark fixtures shared by the `benches/` targets.

use quadembed::{catalog, Engine, RatMatrix};

/// Engine for a catalog group; panics on an invalid name.
pub fn engine(name: &str, degree: usize) -> Engine {
    Engine::new(catalog(name, degree).expect("catalog group"))
}

/// A dense integer matrix with a nonzero determinant.
pub fn sample_matrix(n: usize) -> RatMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ((i * 7 + j * 3) % 11) as i64 - 5 + if i == j { 13 } else { 0 })
                .collect()
        })
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    RatMatrix::from_int_rows(&refs)
}
