/**
 * Client-side validation of the binning couples spec, e.g.
 * "(20,1),(100,5),(191,10)". Mirrors the service's rules so malformed
 * input is caught inline before any request goes out.
 */

export type Couple = [upperLimit: number, step: number];

export type CouplesResult =
  | { ok: true; couples: Couple[] }
  | { ok: false; error: string };

const SPEC_RE = /^\s*\(\s*\d+\s*,\s*\d+\s*\)\s*(?:,\s*\(\s*\d+\s*,\s*\d+\s*\)\s*)*$/;
const COUPLE_RE = /\(\s*(\d+)\s*,\s*(\d+)\s*\)/g;

export function parseCouples(text: string): CouplesResult {
  if (!SPEC_RE.test(text)) {
    return { ok: false, error: "expected couples like (20,1),(100,5)" };
  }
  const couples: Couple[] = [];
  for (const match of text.matchAll(COUPLE_RE)) {
    couples.push([Number.parseInt(match[1]!, 10), Number.parseInt(match[2]!, 10)]);
  }
  let prevUpper = 0;
  for (const [upper, step] of couples) {
    if (upper < 1) return { ok: false, error: "upper limits must be positive" };
    if (step < 1) return { ok: false, error: "steps must be positive" };
    if (upper <= prevUpper) {
      return { ok: false, error: "upper limits must be strictly increasing" };
    }
    prevUpper = upper;
  }
  return { ok: true, couples };
}

export function formatCouples(couples: Couple[]): string {
  return couples.map(([u, s]) => `(${u},${s})`).join(",");
}

/** Identity binning for the unbinned view: one bin per rank. */
export function identityCouples(itemCount: number): string {
  return `(${itemCount},1)`;
}
