//! Inverse of a generic upper unitriangular matrix as a signed sum over
//! chains, checked against the Neumann series.

use lulu::{PolyMatrix, Polynomial};

fn main() -> lulu::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let mut index = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            index.push((i, j));
        }
    }
    let names: Vec<String> = index.iter().map(|(i, j)| format!("u{}{}", i + 1, j + 1)).collect();
    let d = index.len();
    let u = PolyMatrix::from_fn(n, n, d, |i, j| {
        if i == j {
            Polynomial::one(d)
        } else if let Some(k) = index.iter().position(|&p| p == (i, j)) {
            Polynomial::var(d, k)
        } else {
            Polynomial::zero(d)
        }
    })?;
    let paths = u.path_sum_inverse()?;
    let neumann = u.invert_unitriangular()?;
    println!("(U^-1)[1][{n}] = {}", paths.entries()[n - 1].display_with(&names));
    println!("path sum equals Neumann series: {}", paths == neumann);
    println!("U * U^-1 is the identity: {}", u.try_mul(&paths)?.is_identity());
    Ok(())
}
