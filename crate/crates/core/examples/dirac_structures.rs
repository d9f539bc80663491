//! Graphs of bivectors and 2-forms: Lagrangian check, Courant tensor, characteristic ranks.

use dirac_groupoids::dirac::{
    characteristic_ranks_at, check_lagrangian, courant_tensor, from_bivector, from_two_form, Bivector, DiracFrame,
    PSection,
};
use dirac_groupoids::geometry::{Chart, KForm, PointP};
use dirac_groupoids::expr::q;

fn describe(frame: &DiracFrame, at: &PointP) -> Result<(), Box<dyn std::error::Error>> {
    let lagrangian = check_lagrangian(frame, at)?.passed();
    let tensor = courant_tensor(frame)?;
    let ranks = characteristic_ranks_at(frame, at)?;
    println!("{}: Lagrangian {lagrangian}, closed {}", frame.label, tensor.closed);
    if let Some((i, j, k, v)) = tensor.first_nonzero() {
        println!("  T(e{i}, e{j}, e{k}) = {v}");
    }
    println!("  at {at}: G0 {}, G1 {}, P0 {}, P1 {}", ranks.g0, ranks.g1, ranks.p0, ranks.p1);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r3 = Chart::new("R3", ["x", "y", "z"])?;
    let p = PointP::new(&r3, vec![q(1, 1), q(2, 1), q(-1, 2)])?;
    let pi = Bivector::from_entries(&r3, vec![((0, 1), r3.parse("z")?), ((1, 2), r3.parse("x")?)])?;
    describe(&from_bivector(&pi), &p)?;
    // x dy∧dz is not closed: d(x dy∧dz) = dx∧dy∧dz
    let omega = KForm::from_entries(&r3, 2, vec![(vec![1, 2], r3.parse("x")?)])?;
    describe(&from_two_form(&omega)?, &p)?;
    // a frame given directly: span(∂x, ∂y, dz)
    let frame = DiracFrame::new(
        &r3,
        vec![
            PSection::parse(&r3, &["1", "0", "0"], &["0", "0", "0"])?,
            PSection::parse(&r3, &["0", "1", "0"], &["0", "0", "0"])?,
            PSection::parse(&r3, &["0", "0", "0"], &["0", "0", "1"])?,
        ],
        "TF ⊕ F°",
    )?;
    describe(&frame, &p)
}
