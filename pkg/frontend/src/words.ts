// The lexical editor's fixed copy: five categories, one-line explanations,
// and the form fields each category requires.

export interface FormField {
  role: string;
  label: string;
  required: boolean;
  example: string;
}

export interface CategoryInfo {
  id: string;
  title: string;
  icon: string;
  explanation: string;
  fields: FormField[];
}

export const CATEGORIES: CategoryInfo[] = [
  {
    id: "proper_name",
    title: "Proper name",
    icon: "🏷",
    explanation: "A proper name stands for one particular thing, like a person, a city, or a project.",
    fields: [
      { role: "long", label: "name", required: true, example: "Zurich" },
      { role: "abbreviation", label: "abbreviation (optional)", required: false, example: "ZH" },
    ],
  },
  {
    id: "noun",
    title: "Noun",
    icon: "📦",
    explanation: "A noun names a kind of thing and collects individuals into a class, like mountain or country.",
    fields: [
      { role: "singular", label: "singular", required: true, example: "mountain" },
      { role: "plural", label: "plural", required: true, example: "mountains" },
    ],
  },
  {
    id: "transitive_verb",
    title: "Transitive verb",
    icon: "🔗",
    explanation: "A transitive verb relates a subject to an object, like contains or borders.",
    fields: [
      { role: "third_singular", label: "third singular (it ...)", required: true, example: "contains" },
      { role: "bare_infinitive", label: "bare infinitive (they ...)", required: true, example: "contain" },
      { role: "past_participle", label: "past participle (is ... by), optional", required: false, example: "contained" },
    ],
  },
  {
    id: "of_construct",
    title: "Of-construct",
    icon: "🧩",
    explanation: "An of-construct is a noun used with an of-phrase to relate two things, like part of.",
    fields: [
      { role: "noun_part", label: "noun part (... of)", required: true, example: "part" },
    ],
  },
  {
    id: "transitive_adjective",
    title: "Transitive adjective",
    icon: "⚖",
    explanation: "A transitive adjective needs an object, like located in or larger than.",
    fields: [
      { role: "adjective", label: "adjective with preposition", required: true, example: "located in" },
    ],
  },
];

export function categoryById(id: string): CategoryInfo {
  const hit = CATEGORIES.find((c) => c.id === id);
  if (!hit) throw new Error(`unknown category ${id}`);
  return hit;
}
