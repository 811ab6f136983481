import type { SampleItem } from "./types.js";

/** The next unlabeled email after currentId (wrapping around), or null
 * when everything in the current list is labeled. */
export function nextUnlabeled(
  items: SampleItem[],
  currentId: string | null,
): string | null {
  if (items.length === 0) return null;
  const start = currentId === null ? -1 : items.findIndex((i) => i.id === currentId);
  for (let step = 1; step <= items.length; step++) {
    const item = items[(start + step) % items.length];
    if (!item.labeled && item.id !== currentId) return item.id;
  }
  return null;
}
