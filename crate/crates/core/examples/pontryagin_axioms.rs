//! The five Courant axioms for TM ⊕ T*M with the skew bracket, on random sections.

use dirac_groupoids::bcourant::test_functions;
use dirac_groupoids::dirac::{check_courant_axioms, PSection, PVec, Pontryagin};
use dirac_groupoids::geometry::Chart;
use dirac_groupoids::sampling::Sampler;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let chart = Chart::new("R3", ["x", "y", "z"])?;
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let mut s = Sampler::new(seed);
    let sections = (0..3)
        .map(|_| {
            let v = (0..3).map(|_| s.polynomial(&chart, 2)).collect();
            let a = (0..3).map(|_| s.polynomial(&chart, 1)).collect();
            PSection::from_columns(&chart, PVec::new(v, a))
        })
        .collect::<Result<Vec<_>, _>>()?;
    for (i, e) in sections.iter().enumerate() {
        println!("e{i} = {e}");
    }
    let report = check_courant_axioms(&Pontryagin { chart: chart.clone() }, &sections, &test_functions(&chart, seed))?;
    print!("{}", report.to_text());
    Ok(())
}
