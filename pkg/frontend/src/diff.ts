import type { Opcode } from "./types.js";

export interface TokenSegment {
  text: string;
  /** present only in this pane's view, i.e. concealed (filter pane) or
   * reassembled (recipient pane) */
  exclusive: boolean;
}

/** Decorate the mail-filter tokens: tokens the recipient never sees are
 * marked exclusive (delete/replace ranges on the a-side of the diff). */
export function filterPaneSegments(
  tokens: string[],
  opcodes: Opcode[],
): TokenSegment[] {
  const exclusive = new Array(tokens.length).fill(false);
  for (const [tag, i1, i2] of opcodes) {
    if (tag === "delete" || tag === "replace") {
      for (let i = i1; i < i2; i++) exclusive[i] = true;
    }
  }
  return tokens.map((text, i) => ({ text, exclusive: exclusive[i] }));
}

/** Decorate the recipient tokens: tokens absent from the filter's reading
 * (insert/replace ranges on the b-side) are marked exclusive. */
export function recipientPaneSegments(
  tokens: string[],
  opcodes: Opcode[],
): TokenSegment[] {
  const exclusive = new Array(tokens.length).fill(false);
  for (const [tag, , , j1, j2] of opcodes) {
    if (tag === "insert" || tag === "replace") {
      for (let j = j1; j < j2; j++) exclusive[j] = true;
    }
  }
  return tokens.map((text, j) => ({ text, exclusive: exclusive[j] }));
}

export function exclusiveCount(segments: TokenSegment[]): number {
  return segments.filter((s) => s.exclusive).length;
}
