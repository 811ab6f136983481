export type Opcode = [string, number, number, number, number];

export interface Span {
  dom_path: string;
  raw_text: string;
  reasons: string[];
  boundary: string;
  run_length_tokens: number;
  run_length_chars: number;
}

export interface Labels {
  has_concealment: boolean;
  subtypes: string[];
  tricks: string[];
  note?: string;
}

export interface Perspectives {
  id: string;
  raw_source: string;
  normalized_html: string;
  mail_filter_tokens: string[];
  recipient_tokens: string[];
  token_diff: Opcode[];
  spans: Span[];
  auto_labels: Labels;
  human_labels: (Labels & { timestamp?: number }) | null;
}

export interface SampleItem {
  id: string;
  stratum: string | null;
  labeled: boolean;
  auto: Labels;
}

export interface SamplePage {
  items: SampleItem[];
  page: number;
  pages: number;
  total: number;
}

export const SUBTYPES = ["AddParagraph", "DisruptWord", "InsertWord"] as const;
export const TRICKS = [
  "FontColour",
  "FontSize",
  "TextPosition",
  "TableManipulation",
  "Other",
] as const;
