//! The three identifications of 𝔅: pair groupoids, multiplicative 2-forms, Poisson groups.

use dirac_groupoids::bcourant::{build_b, iso_pair, iso_poisson, iso_presymplectic, test_functions};
use dirac_groupoids::dirac::{from_bivector, from_two_form, Bivector};
use dirac_groupoids::geometry::{pullback_form, Chart, KForm};
use dirac_groupoids::groupoid::{pair_dirac, vector_group};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = Chart::new("M", ["x", "y"])?;
    let functions = test_functions(&m, 5);

    let pi = Bivector::from_entries(&m, vec![((0, 1), m.parse("x^2 + y")?)])?;
    let (def, frame) = pair_dirac(&from_bivector(&pi))?;
    print!("{}", iso_pair(&build_b(&def, &frame)?, &functions)?.to_text());

    let omega = KForm::from_entries(&m, 2, vec![(vec![0, 1], m.parse("x")?)])?;
    let (def, frame) = pair_dirac(&from_two_form(&omega)?)?;
    let omega_g = pullback_form(&def.tgt, &omega)?.sub(&pullback_form(&def.src, &omega)?)?;
    print!("{}", iso_presymplectic(&build_b(&def, &frame)?, &omega_g, &functions)?.to_text());

    let v = vector_group(&["x", "y"])?;
    let pi = Bivector::from_entries(&v.total, vec![((0, 1), v.total.parse("x")?)])?;
    print!("{}", iso_poisson(&build_b(&v, &from_bivector(&pi))?, &pi)?.to_text());
    Ok(())
}
