//! Groupoid axioms and multiplicativity of Dirac structures, with a failing quadratic bivector.

use dirac_groupoids::dirac::{from_bivector, Bivector};
use dirac_groupoids::groupoid::{check_dirac_multiplicative, check_groupoid_axioms, pair_dirac, vector_group};
use dirac_groupoids::geometry::Chart;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = Chart::new("M", ["x", "y"])?;
    let pi = Bivector::from_entries(&m, vec![((0, 1), m.parse("x")?)])?;
    let (pair, frame) = pair_dirac(&from_bivector(&pi))?;
    print!("{}", check_groupoid_axioms(&pair, 3, 1)?.to_text());
    print!("{}", check_dirac_multiplicative(&pair, &frame, 5, 1)?.to_text());

    // on (R², +) a linear bivector is multiplicative, a quadratic one is not
    let v = vector_group(&["x", "y"])?;
    for text in ["x + 2*y", "x^2"] {
        let pi = Bivector::from_entries(&v.total, vec![((0, 1), v.total.parse(text)?)])?;
        let r = check_dirac_multiplicative(&v, &from_bivector(&pi), 3, 1)?;
        println!("π = ({text}) ∂x∧∂y on (R², +): {}", if r.passed() { "multiplicative" } else { "not multiplicative" });
        for c in r.checks.iter().filter(|c| !c.witnesses.is_empty()) {
            println!("  {}: {}", c.name, c.witnesses[0]);
        }
    }
    Ok(())
}
