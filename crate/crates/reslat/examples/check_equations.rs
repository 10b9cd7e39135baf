//! Parse equations, evaluate terms, and model-check by brute force.
//!
//! ```bash
//! cargo run --example check_equations
//! ```

use reslat::constructors::{godel_chain, wajsberg_chain};
use reslat::kexpansion::k_expand;
use reslat::terms::{counterexample, named_equation, named_equations, parse_equation, satisfies};

fn main() -> reslat::Result<()> {
    let prelinearity = parse_equation("(x -> y) \\/ (y -> x) = 1")?;
    let g3 = godel_chain(3)?;
    println!("G_3 |= (P): {}", satisfies(&g3, &prelinearity));

    let k4 = k_expand(&godel_chain(2)?)?;
    match counterexample(k4.algebra(), &prelinearity)? {
        Some(cex) => {
            let pretty: Vec<String> = cex
                .iter()
                .enumerate()
                .map(|(i, &v)| format!("{} = {}", prelinearity.var_names()[i], k4.algebra().label(v)))
                .collect();
            println!("K(2) falsifies (P) at {}", pretty.join(", "));
        }
        None => println!("K(2) |= (P)?!"),
    }

    // the named library
    println!("\nlibrary of {} named equations:", named_equations().len());
    for eq in named_equations() {
        println!("  {:<12} {}", eq.name.clone().unwrap_or_default(), eq.display());
    }

    // divisibility and Tanaka hold on every Wajsberg chain
    let divisibility = named_equation("D").unwrap();
    let tanaka = named_equation("T").unwrap();
    for n in 1..=5 {
        let l = wajsberg_chain(n)?;
        assert!(satisfies(&l, &divisibility));
        assert!(satisfies(&l, &tanaka));
    }
    println!("\n(D) and (T) hold on Ł_1 .. Ł_5");
    Ok(())
}
