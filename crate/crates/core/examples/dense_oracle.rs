//! The dense reference path: build T_N(f), invert it and take its determinant.

use toeplitz_spectra::toeplitz::{dense_invert, ToeplitzMatrix};
use toeplitz_spectra::TrigSymbol;

fn main() -> toeplitz_spectra::Result<()> {
    let f = TrigSymbol::cosine(&[1.25, -1.0]);
    let t = ToeplitzMatrix::build(&f, 5);
    println!("T_5 has bandwidth {} and is Hermitian: {}", t.bandwidth(), t.is_hermitian());
    let inv = dense_invert(&t)?;
    let check = t.to_dense().matmul(&inv)?.sub(&toeplitz_spectra::DenseMatrix::identity(6))?.max_abs();
    println!("|T·T⁻¹ − I| = {check:.2e}, det T_5 = {:.10}", t.determinant()?.re);
    print!("{}", inv.to_csv());
    Ok(())
}
