//! Print the current calibration fits next to the frozen constants. Run this
//! after changing the interpreter's cost accounting or a machine's program,
//! then update `frozen.rs` to the printed values.

fn main() {
    println!("ITERATED_APPLY_A = {}", baire::calibrate::fit_iterated_apply_a());
    println!("MAX_LENGTH_C = {}", baire::calibrate::fit_max_length_c());
    println!("IDENTITY_C = {}", baire::calibrate::fit_identity_c());
    println!(
        "BRUTEFORCE_RESTRICTED_C = {}",
        baire::calibrate::fit_bruteforce_restricted_c()
    );
    println!("CLOCK_REVISION_K = {}", baire::calibrate::fit_clock_revision_k());
    println!("CLOCK_MAJORANT_K = {}", baire::calibrate::fit_clock_majorant_k());
    println!("COMPOSE_C = {}", baire::calibrate::fit_compose_c());
}
