//! C ABI for the `tpg` library.
//!
//! Matrices and improvement steps are opaque handles owned by the caller and
//! released with `tpg_matrix_free` / `tpg_step_free`. Every fallible call
//! returns a [`TpgStatus`]; on anything other than `TPG_STATUS_OK` or
//! `TPG_STATUS_NOT_FOUND` the thread's last error message is set and can be
//! read with [`tpg_last_error`]. Indices are 0-based. A `budget` of 0 selects
//! the library default.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use tpg::equilibrium::{construct_1strong_ne, construct_2strong_ne_amax1, exhaustive_ne_search, is_t_strong_ne};
use tpg::solver::SearchConfig;
use tpg::{AvailabilityMatrix, Coalition, Error, ImprovementStep, Rational};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TpgStatus {
    Ok = 0,
    /// The query has no answer (no improvement step, no equilibrium found).
    NotFound = 1,
    InvalidInput = 2,
    BudgetExceeded = 3,
    Unsupported = 4,
    NullPointer = 5,
    Internal = 6,
}

/// Availability or declaration matrix.
pub struct TpgMatrix(AvailabilityMatrix);

/// Improvement step of a coalition.
pub struct TpgStep(ImprovementStep);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(err: Error) -> TpgStatus {
    let status = match err {
        Error::BudgetExceeded { .. } => TpgStatus::BudgetExceeded,
        Error::Unsupported(_) => TpgStatus::Unsupported,
        Error::Internal(_) => TpgStatus::Internal,
        _ => TpgStatus::InvalidInput,
    };
    set_error(err.to_string());
    status
}

fn null(what: &str) -> TpgStatus {
    set_error(format!("{what} is null"));
    TpgStatus::NullPointer
}

/// Runs `f`, turning a panic into `TPG_STATUS_INTERNAL`.
fn guard(f: impl FnOnce() -> TpgStatus) -> TpgStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("panic inside tpg");
        TpgStatus::Internal
    })
}

fn config(budget: u64, parallel: bool) -> SearchConfig {
    let mut cfg = SearchConfig { parallel, ..SearchConfig::default() };
    if budget > 0 {
        cfg.budget = budget;
    }
    cfg
}

/// # Safety
/// `out` must be valid for writes.
unsafe fn put<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

fn ratio(r: &Rational) -> (u64, u64) {
    (r.numer().to_u64().unwrap_or(u64::MAX), r.denom().to_u64().unwrap_or(u64::MAX))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tpg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds an `n x m` matrix from `n * m` row-major entries.
///
/// # Safety
/// `data` must point to `teams * slots` readable values; `out` must be valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn tpg_matrix_new(
    teams: usize,
    slots: usize,
    data: *const u64,
    out: *mut *mut TpgMatrix,
) -> TpgStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        let Some(len) = teams.checked_mul(slots) else {
            set_error("matrix size overflows");
            return TpgStatus::InvalidInput;
        };
        if data.is_null() && len > 0 {
            return null("data");
        }
        let entries = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(data, len).to_vec() };
        match AvailabilityMatrix::new(teams, slots, entries) {
            Ok(a) => {
                put(out, TpgMatrix(a));
                TpgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Parses a `tpg v1` document.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tpg_matrix_parse(text: *const c_char, out: *mut *mut TpgMatrix) -> TpgStatus {
    guard(|| {
        if text.is_null() {
            return null("text");
        }
        if out.is_null() {
            return null("out");
        }
        match tpg::parse_instance(CStr::from_ptr(text).to_bytes()) {
            Ok(a) => {
                put(out, TpgMatrix(a));
                TpgStatus::Ok
            }
            Err(e) => fail(e.into()),
        }
    })
}

/// Serializes to a `tpg v1` document. Release the result with
/// `tpg_string_free`. Returns null if `matrix` is null.
///
/// # Safety
/// `matrix` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpg_matrix_serialize(matrix: *const TpgMatrix) -> *mut c_char {
    match matrix.as_ref() {
        Some(m) => CString::new(tpg::serialize(&m.0)).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tpg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `matrix` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn tpg_matrix_free(matrix: *mut TpgMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// Number of teams (rows), or 0 for a null handle.
///
/// # Safety
/// `matrix` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpg_matrix_teams(matrix: *const TpgMatrix) -> usize {
    matrix.as_ref().map_or(0, |m| m.0.teams())
}

/// Number of slots (columns), or 0 for a null handle.
///
/// # Safety
/// `matrix` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpg_matrix_slots(matrix: *const TpgMatrix) -> usize {
    matrix.as_ref().map_or(0, |m| m.0.slots())
}

/// # Safety
/// `matrix` must be null or a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tpg_matrix_get(
    matrix: *const TpgMatrix,
    team: usize,
    slot: usize,
    out: *mut u64,
) -> TpgStatus {
    let Some(m) = matrix.as_ref() else { return null("matrix") };
    if out.is_null() {
        return null("out");
    }
    if team >= m.0.teams() || slot >= m.0.slots() {
        set_error(format!("entry ({team}, {slot}) outside a {}x{} matrix", m.0.teams(), m.0.slots()));
        return TpgStatus::InvalidInput;
    }
    *out = m.0.get(team, slot);
    TpgStatus::Ok
}

/// Pay-off of `team` under `profile` as the reduced fraction `num / den`.
///
/// # Safety
/// `profile` must be null or a live handle; `num` and `den` must be valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn tpg_payoff(
    profile: *const TpgMatrix,
    team: usize,
    num: *mut u64,
    den: *mut u64,
) -> TpgStatus {
    guard(|| {
        let Some(b) = profile.as_ref() else { return null("profile") };
        if num.is_null() || den.is_null() {
            return null("num/den");
        }
        match tpg::payoff(&b.0, team) {
            Ok(p) => {
                (*num, *den) = ratio(&p);
                TpgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Writes the winning slots in ascending order. `len` receives the number of
/// winners; if that exceeds `cap` nothing is written to `out` and
/// `TPG_STATUS_INVALID_INPUT` is returned, so callers can size the buffer.
///
/// # Safety
/// `profile` must be null or a live handle; `out` must have room for `cap`
/// values; `len` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tpg_winners(
    profile: *const TpgMatrix,
    out: *mut usize,
    cap: usize,
    len: *mut usize,
) -> TpgStatus {
    let Some(b) = profile.as_ref() else { return null("profile") };
    if len.is_null() {
        return null("len");
    }
    let w = tpg::winners(&b.0);
    *len = w.len();
    if w.len() > cap {
        set_error(format!("{} winners do not fit a buffer of {cap}", w.len()));
        return TpgStatus::InvalidInput;
    }
    if !w.is_empty() {
        if out.is_null() {
            return null("out");
        }
        std::slice::from_raw_parts_mut(out, w.len()).copy_from_slice(&w);
    }
    TpgStatus::Ok
}

fn finish_step(result: tpg::Result<Option<ImprovementStep>>, out: *mut *mut TpgStep) -> TpgStatus {
    match result {
        Ok(Some(step)) => {
            // SAFETY: callers check `out` before searching.
            unsafe { put(out, TpgStep(step)) };
            TpgStatus::Ok
        }
        Ok(None) => TpgStatus::NotFound,
        Err(e) => fail(e),
    }
}

/// Improvement step of the given coalition from `profile`, or
/// `TPG_STATUS_NOT_FOUND`.
///
/// # Safety
/// Handles must be null or live; `members` must point to `len` readable
/// values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tpg_find_improvement(
    instance: *const TpgMatrix,
    profile: *const TpgMatrix,
    members: *const usize,
    len: usize,
    out: *mut *mut TpgStep,
) -> TpgStatus {
    guard(|| {
        let (Some(a), Some(b)) = (instance.as_ref(), profile.as_ref()) else {
            return null("instance/profile");
        };
        if out.is_null() || (members.is_null() && len > 0) {
            return null("members/out");
        }
        let members = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(members, len).to_vec() };
        let coalition = match Coalition::new(members, a.0.teams()) {
            Ok(c) => c,
            Err(e) => return fail(e),
        };
        finish_step(tpg::find_improvement_step(&a.0, &b.0, &coalition), out)
    })
}

/// First improvement step over all coalitions of at most `max_size` teams,
/// or `TPG_STATUS_NOT_FOUND`.
///
/// # Safety
/// Handles must be null or live; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tpg_find_improvement_any(
    instance: *const TpgMatrix,
    profile: *const TpgMatrix,
    max_size: usize,
    parallel: bool,
    out: *mut *mut TpgStep,
) -> TpgStatus {
    guard(|| {
        let (Some(a), Some(b)) = (instance.as_ref(), profile.as_ref()) else {
            return null("instance/profile");
        };
        if out.is_null() {
            return null("out");
        }
        finish_step(tpg::find_improvement_any(&a.0, &b.0, max_size, &config(0, parallel)), out)
    })
}

/// # Safety
/// `step` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn tpg_step_free(step: *mut TpgStep) {
    if !step.is_null() {
        drop(Box::from_raw(step));
    }
}

/// Coalition size, or 0 for a null handle.
///
/// # Safety
/// `step` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpg_step_coalition_len(step: *const TpgStep) -> usize {
    step.as_ref().map_or(0, |s| s.0.coalition.len())
}

/// Team index of the `k`-th coalition member and its pay-off before and
/// after the step. Any of the output pointers may be null.
///
/// # Safety
/// `step` must be null or a live handle; non-null outputs must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn tpg_step_member(
    step: *const TpgStep,
    k: usize,
    team: *mut usize,
    old_num: *mut u64,
    old_den: *mut u64,
    new_num: *mut u64,
    new_den: *mut u64,
) -> TpgStatus {
    let Some(s) = step.as_ref() else { return null("step") };
    let Some(&t) = s.0.coalition.members().get(k) else {
        set_error(format!("member {k} of a coalition of {}", s.0.coalition.len()));
        return TpgStatus::InvalidInput;
    };
    let (on, od) = ratio(&s.0.old_payoffs[k]);
    let (nn, nd) = ratio(&s.0.new_payoffs[k]);
    if !team.is_null() {
        *team = t;
    }
    for (p, v) in [(old_num, on), (old_den, od), (new_num, nn), (new_den, nd)] {
        if !p.is_null() {
            *p = v;
        }
    }
    TpgStatus::Ok
}

/// The slot that wins alone after the step, or `TPG_STATUS_NOT_FOUND` when
/// the step leaves a tie.
///
/// # Safety
/// `step` must be null or a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tpg_step_target_slot(step: *const TpgStep, out: *mut usize) -> TpgStatus {
    let Some(s) = step.as_ref() else { return null("step") };
    if out.is_null() {
        return null("out");
    }
    match s.0.target_slot {
        Some(j) => {
            *out = j;
            TpgStatus::Ok
        }
        None => TpgStatus::NotFound,
    }
}

/// Copy of the whole profile after the step, as a new handle.
///
/// # Safety
/// `step` must be null or a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tpg_step_profile(step: *const TpgStep, out: *mut *mut TpgMatrix) -> TpgStatus {
    let Some(s) = step.as_ref() else { return null("step") };
    if out.is_null() {
        return null("out");
    }
    put(out, TpgMatrix(s.0.profile.clone()));
    TpgStatus::Ok
}

/// Checks whether `profile` is a `t`-strong Nash equilibrium. On return
/// `is_equilibrium` is set; when it is false and `witness` is non-null, a
/// blocking step is stored there.
///
/// # Safety
/// Handles must be null or live; `is_equilibrium` must be valid for writes;
/// `witness` may be null.
#[no_mangle]
pub unsafe extern "C" fn tpg_ne_verify(
    instance: *const TpgMatrix,
    profile: *const TpgMatrix,
    t: usize,
    is_equilibrium: *mut bool,
    witness: *mut *mut TpgStep,
) -> TpgStatus {
    guard(|| {
        let (Some(a), Some(b)) = (instance.as_ref(), profile.as_ref()) else {
            return null("instance/profile");
        };
        if is_equilibrium.is_null() {
            return null("is_equilibrium");
        }
        match is_t_strong_ne(&a.0, &b.0, t, &config(0, false)) {
            Ok(v) => {
                *is_equilibrium = v.is_equilibrium();
                if let (Some(w), false) = (v.witness, witness.is_null()) {
                    put(witness, TpgStep(w));
                }
                TpgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Constructs a 1-strong equilibrium (`t == 1`, instances with entries at
/// most 3) or a 2-strong one (`t == 2`, 0/1 instances).
///
/// # Safety
/// `instance` must be null or live; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tpg_ne_construct(
    instance: *const TpgMatrix,
    t: usize,
    budget: u64,
    out: *mut *mut TpgMatrix,
) -> TpgStatus {
    guard(|| {
        let Some(a) = instance.as_ref() else { return null("instance") };
        if out.is_null() {
            return null("out");
        }
        let cfg = config(budget, false);
        let built = match t {
            1 => construct_1strong_ne(&a.0, &cfg).map(|c| c.profile),
            2 => construct_2strong_ne_amax1(&a.0, &cfg).map(|c| c.profile),
            _ => Err(Error::Unsupported(format!("construction for t = {t}"))),
        };
        match built {
            Ok(b) => {
                put(out, TpgMatrix(b));
                TpgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// First `t`-strong equilibrium in profile order, or `TPG_STATUS_NOT_FOUND`.
///
/// # Safety
/// `instance` must be null or live; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tpg_ne_search(
    instance: *const TpgMatrix,
    t: usize,
    budget: u64,
    parallel: bool,
    out: *mut *mut TpgMatrix,
) -> TpgStatus {
    guard(|| {
        let Some(a) = instance.as_ref() else { return null("instance") };
        if out.is_null() {
            return null("out");
        }
        match exhaustive_ne_search(&a.0, t, &config(budget, parallel)) {
            Ok(Some(b)) => {
                put(out, TpgMatrix(b));
                TpgStatus::Ok
            }
            Ok(None) => TpgStatus::NotFound,
            Err(e) => fail(e),
        }
    })
}
