export const SUBTYPES = ["AddParagraph", "DisruptWord", "InsertWord"];
export const TRICKS = [
    "FontColour",
    "FontSize",
    "TextPosition",
    "TableManipulation",
    "Other",
];
