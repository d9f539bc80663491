//! Lagrangian data along the units and the Dirac homogeneous spaces they classify.

use dirac_groupoids::bcourant::build_b;
use dirac_groupoids::dirac::{from_bivector, Bivector, PVec};
use dirac_groupoids::geometry::{Chart, SmoothMap};
use dirac_groupoids::groupoid::{vector_group, Bisection};
use dirac_groupoids::homogeneous::{drinfeld_classify, SubgroupoidData, UnitDirac};

fn column(c: &Chart, v: [&str; 2], a: [&str; 2]) -> Result<PVec<dirac_groupoids::geometry::RF>, Box<dyn std::error::Error>> {
    Ok(PVec::new(vec![c.parse(v[0])?, c.parse(v[1])?], vec![c.parse(a[0])?, c.parse(a[1])?]))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = vector_group(&["x", "y"])?;
    let pi = Bivector::from_entries(&g.total, vec![((0, 1), g.total.parse("x")?)])?;
    let b = build_b(&g, &from_bivector(&pi))?;
    let p = &g.base;
    // H = exp(span e_x), 𝔇 = AH ⊕ AH°
    let exp = Bisection::new(&g, SmoothMap::parse(p, &g.total, &["3", "0"])?, "exp")?;
    let h = SubgroupoidData::new(&g, vec![vec![p.one(), p.zero()]], vec![exp])?;
    let d = UnitDirac::new(&g, vec![column(p, ["1", "0"], ["0", "0"])?, column(p, ["0", "0"], ["0", "1"])?])?;
    print!("{}", drinfeld_classify(&b, &h, &d, 2, 1)?.to_text());
    // the groupoid's own datum Is ⊕ 𝔄 gives back D_G
    let own = UnitDirac::of_groupoid(&b)?;
    print!("{}", drinfeld_classify(&b, &SubgroupoidData::units_only(&g), &own, 2, 1)?.to_text());
    Ok(())
}
