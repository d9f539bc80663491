//! Bisections of the pair groupoid acting on 𝔅 by right translation.

use dirac_groupoids::bcourant::{bisection_action_at, build_b, check_bisection_action, BisectionAction};
use dirac_groupoids::dirac::{from_two_form, PVec};
use dirac_groupoids::expr::q;
use dirac_groupoids::geometry::{Chart, KForm, PointP, SmoothMap};
use dirac_groupoids::groupoid::{pair_dirac, Bisection};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = Chart::new("M", ["x", "y"])?;
    let omega = KForm::from_entries(&m, 2, vec![(vec![0, 1], m.parse("x")?)])?;
    let (def, frame) = pair_dirac(&from_two_form(&omega)?)?;
    let b = build_b(&def, &frame)?;
    // K(p) = (p, φ(p)) with φ(x, y) = (x³ + x, y)
    let cubic = Bisection::new(&def, SmoothMap::parse(&m, &def.total, &["x", "y", "x^3 + x", "y"])?, "cubic")?;
    let swap = Bisection::new(&def, SmoothMap::parse(&m, &def.total, &["x", "y", "y", "x"])?, "swap")?;

    let p = PointP::new(&m, vec![q(1, 1), q(0, 1)])?;
    let z = q(0, 1);
    let e = PVec::new(vec![z.clone(), z.clone(), q(5, 1), q(7, 1)], vec![z.clone(), z, q(8, 1), q(3, 1)]);
    let out = bisection_action_at(&b, &BisectionAction::new(&def, &cubic)?, &p, &e)?;
    println!("ρ_cubic {e} at {p} = {} at {}", out.value, out.point);

    print!("{}", check_bisection_action(&b, &[Bisection::identity(&def), cubic, swap], 3, 11)?.to_text());
    Ok(())
}
