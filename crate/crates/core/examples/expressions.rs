//! Exact rational functions: parsing, canonical form, gcd-reduced arithmetic.

use dirac_groupoids::expr::{parse_expression, Vars};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vars = Vars::new(["x", "y"]);
    let f = parse_expression("(x^2 - y^2)/(x + y)", &vars)?;
    let g = parse_expression("1/(x - y) + 1/(x + y)", &vars)?;
    println!("f = {f}");
    println!("g = {g}");
    println!("f * g = {}", &f * &g);
    println!("d/dx g = {}", g.derivative(0));
    let a = parse_expression("(1 + y^2)^2 * (x - 1)", &vars)?;
    let b = parse_expression("(1 + y^2) * (x^2 - 1)", &vars)?;
    println!("gcd({a}, {b}) = {}", a.num().gcd(b.num()));
    // parse errors carry a position
    if let Err(e) = parse_expression("x +* y", &vars) {
        println!("rejected: {e}");
    }
    Ok(())
}
