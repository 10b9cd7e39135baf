//! Build the named chains, sums and products, and validate them.
//!
//! ```bash
//! cargo run --example build_algebras
//! ```

use reslat::constructors::{c5, direct_product, godel_chain, ordinal_sum, two, wajsberg_chain};

fn main() -> reslat::Result<()> {
    let l3 = wajsberg_chain(3)?;
    println!("Ł_3 has {} elements; validation passed: {}", l3.size(), l3.validate().passed());
    for i in l3.elements() {
        print!("{} ", l3.label(i));
    }
    println!("(ascending)");

    let g4 = godel_chain(4)?;
    println!("G_4 is idempotent: {}", g4.elements().all(|x| g4.is_idempotent(x)));

    let sum = ordinal_sum(&two()?, &l3)?;
    println!("2 + Ł_3 has {} elements and is a chain: {}", sum.size(), sum.is_chain());

    let square = direct_product(&[two()?, two()?])?;
    println!("2 x 2 has {} elements and is a chain: {}", square.size(), square.is_chain());

    let c = c5()?;
    println!("C_5 multiplication row of a: ");
    let a = 3;
    for x in c.elements() {
        println!("  a * {} = {}", c.label(x), c.label(c.mult(a, x)));
    }

    // every constructed algebra serializes to the interchange document
    println!("{}", two()?.to_json());
    Ok(())
}
