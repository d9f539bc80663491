//! 𝔅(D_G) for a multiplicative 2-form: representatives, rank, and the Courant axioms.

use dirac_groupoids::bcourant::{build_b, check_b_axioms, test_functions};
use dirac_groupoids::dirac::from_two_form;
use dirac_groupoids::geometry::{Chart, KForm};
use dirac_groupoids::groupoid::pair_dirac;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = Chart::new("M", ["x", "y"])?;
    let omega = KForm::from_entries(&m, 2, vec![(vec![0, 1], m.parse("1 + x*y")?)])?;
    let (def, frame) = pair_dirac(&from_two_form(&omega)?)?;
    let b = build_b(&def, &frame)?;
    println!("rank 𝔅 = {} over {}", b.rank(), def.base);
    for (i, r) in b.reps.iter().enumerate() {
        println!("r{i} = {r}, anchor {:?}", b.b_anchor(r).iter().map(|c| c.to_string()).collect::<Vec<_>>());
    }
    println!("[r0, r2] = {}", b.b_bracket(&b.reps[0], &b.reps[2])?);
    print!("{}", b.report()?.to_text());
    print!("{}", check_b_axioms(&b, &test_functions(&def.base, 3))?.to_text());
    Ok(())
}
