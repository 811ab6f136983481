import { Labels, SUBTYPES, TRICKS } from "./types.js";

/** Client-side label rules: a concealment verdict must name at least one
 * sub-type and one trick, and only known enum values are allowed. */
export function validateLabel(label: Labels): string[] {
  const errors: string[] = [];
  if (label.has_concealment) {
    if (label.subtypes.length === 0) errors.push("select at least one sub-type");
    if (label.tricks.length === 0) errors.push("select at least one CSS trick");
  }
  for (const s of label.subtypes) {
    if (!(SUBTYPES as readonly string[]).includes(s)) {
      errors.push(`unknown sub-type: ${s}`);
    }
  }
  for (const t of label.tricks) {
    if (!(TRICKS as readonly string[]).includes(t)) {
      errors.push(`unknown trick: ${t}`);
    }
  }
  return errors;
}

export function toggle(values: string[], value: string): string[] {
  return values.includes(value)
    ? values.filter((v) => v !== value)
    : [...values, value];
}
