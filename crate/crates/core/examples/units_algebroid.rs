//! Units algebroid, cores and the bracket on star sections for a Poisson group.

use dirac_groupoids::dirac::{from_bivector, Bivector, PVec};
use dirac_groupoids::groupoid::vector_group;
use dirac_groupoids::infinitesimal::Infinitesimal;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = vector_group(&["x", "y"])?;
    let pi = Bivector::from_entries(&g.total, vec![((0, 1), g.total.parse("x")?)])?;
    let inf = Infinitesimal::new(&g, &from_bivector(&pi))?;
    for (i, a) in inf.units.iter().enumerate() {
        println!("𝔄[{i}] = {a}, star section {}", inf.stars[i]);
    }
    for (i, c) in inf.s_core.iter().enumerate() {
        println!("Is[{i}] = {c}");
    }
    let p = &g.base;
    let dx = PVec::new(p.zeros(2), vec![p.one(), p.zero()]);
    let dy = PVec::new(p.zeros(2), vec![p.zero(), p.one()]);
    // the linearization of π at the identity: [dx, dy] = dx
    println!("[dx, dy] = {}", inf.star_bracket(&dx, &dy)?);
    print!("{}", inf.report()?.to_text());
    Ok(())
}
