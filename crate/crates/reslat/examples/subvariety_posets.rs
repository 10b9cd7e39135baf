//! HS closures, variety comparison, and subvariety posets with DOT
//! export.
//!
//! ```bash
//! cargo run --example subvariety_posets
//! ```

use reslat::kexpansion::{named, NamedKLattice};
use reslat::terms::{kappa_equation, lambda_n, LambdaVariant};
use reslat::varieties::{check_splitting, hs_closure, ll_order, si_members, variety_leq};

fn main() -> reslat::Result<()> {
    let k4 = named(NamedKLattice::K4)?;
    let closure = hs_closure(std::slice::from_ref(&k4), 16)?;
    println!(
        "HS(K_4) class sizes: {:?}",
        closure.values().map(|a| a.size()).collect::<Vec<_>>()
    );

    let k22 = named(NamedKLattice::Krp { r: 2, p: 2 })?;
    let sis = si_members(std::slice::from_ref(&k22), 16)?;
    println!(
        "SI members of V(K(Ł_2)): {:?}",
        sis.values().map(|a| a.size()).collect::<Vec<_>>()
    );

    let k3 = named(NamedKLattice::K3)?;
    println!("V(K_3) <= V(K_4): {}", variety_leq(std::slice::from_ref(&k3), std::slice::from_ref(&k4), 16)?);
    println!("V(K_4) <= V(K_3): {}", variety_leq(&[k4], &[k3], 16)?);

    // the arithmetic order governing the K_{r,n} family
    println!("(1,2) << (2,4): {}", ll_order(1, 2, 2, 4)?);
    println!("(1,1) << (1,2): {}", ll_order(1, 1, 1, 2)?);

    // the idempotent-chain family is a single ascending chain
    let poset = reslat::reproduce::gnpcl_variety_poset()?;
    println!("\n{}", poset.to_dot());

    // kappa(lambda_2) splits it at K_8
    let eq = kappa_equation(&lambda_n(2, LambdaVariant::Wajsberg))?;
    let k8 = named(NamedKLattice::K8)?;
    let report = check_splitting(&poset, &k8, &eq, 25)?;
    println!("splitting dichotomy holds: {}", report.splits);
    for v in &report.verdicts {
        println!(
            "  {:<8} satisfies={} contains_K8={}",
            v.name, v.satisfies_equation, v.contains_algebra
        );
    }
    Ok(())
}
