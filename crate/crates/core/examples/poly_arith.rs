//! Exact polynomial arithmetic over the rationals.

use lulu::{poly_arith, rational, PolyOp, Polynomial};

fn main() -> lulu::Result<()> {
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let x = Polynomial::var(3, 0);
    let y = Polynomial::var(3, 1);
    let z = Polynomial::var(3, 2);

    let a = poly_arith(&x, &y.scale(&rational::frac(1, 2)), PolyOp::Add)?;
    let b = poly_arith(&x, &z, PolyOp::Sub)?;
    let prod = poly_arith(&a, &b, PolyOp::Mul)?;
    println!("a = {}", a.display_with(&names));
    println!("b = {}", b.display_with(&names));
    println!("a*b = {}", prod.display_with(&names));
    println!("(a*b)^2 has {} terms", prod.pow(2).len());
    println!("d(a*b)/dx = {}", prod.derivative(0).display_with(&names));
    println!("exact a*b / b = {:?}", prod.exact_div(&b).map(|q| q.display_with(&names).to_string()));

    let point = [rational::int(2), rational::frac(-1, 3), rational::int(5)];
    println!("a*b at (2, -1/3, 5) = {}", prod.eval(&point)?);
    println!("json: {}", prod.to_json());
    Ok(())
}
