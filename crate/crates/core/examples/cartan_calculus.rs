//! Lie derivatives, contractions and the exterior derivative on a chart.

use dirac_groupoids::geometry::{
    differential, exterior_derivative, interior_product, lie_bracket, lie_derivative, Chart, KForm, VectorField,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let chart = Chart::new("R3", ["x", "y", "z"])?;
    let x = VectorField::parse(&chart, &["y", "-x", "0"])?;
    let y = VectorField::parse(&chart, &["0", "z", "x*y"])?;
    println!("[X, Y] = {}", lie_bracket(&x, &y)?);
    let omega = KForm::from_entries(&chart, 2, vec![(vec![0, 1], chart.parse("z")?), (vec![1, 2], chart.parse("x^2")?)])?;
    println!("ω = {omega}");
    println!("dω = {}", exterior_derivative(&omega)?);
    // Cartan's formula, checked symbolically
    let lhs = lie_derivative(&x, &omega)?;
    let rhs = exterior_derivative(&interior_product(&x, &omega)?)?.add(&interior_product(&x, &exterior_derivative(&omega)?)?)?;
    println!("£_X ω = {lhs}; matches d ι_X + ι_X d: {}", lhs.sub(&rhs)?.is_zero());
    let f = chart.parse("x*y*z")?;
    println!("d(xyz) = {}, d² = 0: {}", differential(&chart, &f), exterior_derivative(&differential(&chart, &f))?.is_zero());
    Ok(())
}
