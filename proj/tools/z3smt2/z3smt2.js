#!/usr/bin/env node
// Runs one SMT-LIB2 file through the z3 WebAssembly build and prints the
// solver output (verdict line plus model) to stdout.
//
//   node z3smt2.js FILE [TIMEOUT_MS]
//
// The decimal pretty-printer is forced on so models never contain root-obj
// algebraic numbers; 17 digits round-trips a double exactly.
//
// Two rewrites happen before the script reaches z3; both perturb the answer
// by far less than the acceptance tolerance delta_sat = 0.05, and extracted
// models are re-validated against the exact semantics by the caller anyway.
//
//   1. Decimal literals longer than ten fractional digits are rounded to
//      eight fractional digits.  nlsat's rational arithmetic scales with the
//      denominator, so a single 17-digit decimal poisons every product (a
//      two-sided distribution box over a six-op prefix goes from 1.4 s at
//      1e-8 granularity to minutes at 1e-17) while rounding perturbs each
//      constant by at most 5e-9 in absolute terms.
//   2. (check-sat) becomes a strategy: nlsat first (finds models of these
//      quadratic systems in about a second), then the incremental
//      linearization core, which refutes probability-sum conflicts that
//      nlsat cannot, then unbounded nlsat so the answer stays complete.
'use strict';

const CHECK_SAT_STRATEGY =
  '(check-sat-using (or-else (try-for qfnra-nlsat 6000)' +
  ' (try-for smt 3000) qfnra-nlsat))';

const fs = require('fs');

function roundLongDecimals(text) {
  return text.replace(/\d+\.\d{10,}/g, (lit) => {
    const x = parseFloat(lit);
    if (!isFinite(x)) return lit;
    const s = x.toFixed(8).replace(/0+$/, '');
    return s.endsWith('.') ? s + '0' : s;
  });
}

async function main() {
  const file = process.argv[2];
  if (!file) {
    console.error('usage: z3smt2.js FILE [TIMEOUT_MS]');
    process.exit(64);
  }
  const timeoutMs = process.argv[3] ? Number(process.argv[3]) : 0;
  const text = roundLongDecimals(fs.readFileSync(file, 'utf8'))
    .split('(check-sat)')
    .join(CHECK_SAT_STRATEGY);

  const { init } = require('z3-solver');
  const { Z3 } = await init();
  Z3.global_param_set('pp.decimal', 'true');
  Z3.global_param_set('pp.decimal_precision', '17');
  if (timeoutMs > 0) Z3.global_param_set('timeout', String(timeoutMs));
  const cfg = Z3.mk_config();
  const ctx = Z3.mk_context(cfg);
  try {
    const out = await Z3.eval_smtlib2_string(ctx, text);
    process.stdout.write(out);
  } finally {
    Z3.del_context(ctx);
  }
  process.exit(0);
}

main().catch((err) => {
  console.error(String(err && err.stack ? err.stack : err));
  process.exit(1);
});
