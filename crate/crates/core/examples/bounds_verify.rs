//! Every scalar inequality sweep, then the same with a weaker growth constant.

use torsion::bounds::{verification_suite, SuiteOptions};

fn main() -> torsion::Result<()> {
    for v in verification_suite(&SuiteOptions::default())? {
        println!("{:<28} {:>5} {:>12.3e}  {}", v.name, if v.pass { "ok" } else { "FAIL" }, v.worst_residual, v.grid);
    }
    let weak = verification_suite(&SuiteOptions { aim_constant: 5.0 })?;
    let aim = weak.iter().find(|v| v.name == "aim_envelope").unwrap();
    println!("\nwith 5.0 instead of 5.56: aim_envelope pass = {}, worst {:.4}", aim.pass, aim.worst_residual);
    Ok(())
}
