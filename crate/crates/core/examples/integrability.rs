//! Closedness decided through 𝔄 and Is, compared with the Courant tensor of D_G.

use dirac_groupoids::dirac::{from_bivector, from_two_form, Bivector};
use dirac_groupoids::geometry::{Chart, KForm};
use dirac_groupoids::groupoid::pair_dirac;
use dirac_groupoids::infinitesimal::Infinitesimal;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r3 = Chart::new("R3", ["x", "y", "z"])?;
    let closed = from_bivector(&Bivector::from_entries(&r3, vec![((0, 1), r3.parse("z")?)])?);
    let open = from_two_form(&KForm::from_entries(&r3, 2, vec![(vec![1, 2], r3.parse("x")?)])?)?;
    for base in [closed, open] {
        let (def, frame) = pair_dirac(&base)?;
        println!("pair groupoid with {}", base.label);
        print!("{}", Infinitesimal::new(&def, &frame)?.integrability_criterion()?.to_text());
    }
    Ok(())
}
